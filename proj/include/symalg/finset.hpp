#pragma once

#include "integer.hpp"

#include <memory>
#include <string>
#include <vector>

namespace symalg {

// Either a list of distinct labels or a product of two finite sets; product
// labels are built on demand.
class FinSet {
public:
    FinSet() : FinSet(std::vector<std::string>{}) {}
    explicit FinSet(std::vector<std::string> labels) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (labels[i] == labels[j]) throw InputError("duplicate label '" + labels[i] + "' in finite set");
        auto n = std::make_shared<Node>();
        n->size = labels.size();
        n->labels = std::move(labels);
        n_ = std::move(n);
    }

    static FinSet standard(std::size_t n, const std::string& stem = "p") {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < n; ++i) l.push_back(stem + std::to_string(i));
        return FinSet(std::move(l));
    }

    // (a, b) sits at index a * |Y| + b.
    static FinSet product(const FinSet& x, const FinSet& y) {
        auto n = std::make_shared<Node>();
        n->size = x.size() * y.size();
        n->left = x.n_;
        n->right = y.n_;
        FinSet out;
        out.n_ = std::move(n);
        return out;
    }

    std::size_t size() const { return n_->size; }
    bool is_product() const { return n_->left != nullptr; }
    FinSet left() const { return FinSet(n_->left); }
    FinSet right() const { return FinSet(n_->right); }

    std::string label(std::size_t i) const {
        if (!is_product()) return n_->labels.at(i);
        const std::size_t r = n_->right->size;
        return "(" + left().label(i / r) + "," + right().label(i % r) + ")";
    }
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
        return out;
    }
    std::size_t index_of(const std::string& l) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (label(i) == l) return i;
        throw InputError("unknown element '" + l + "'");
    }

    bool operator==(const FinSet& o) const { return same(n_, o.n_); }
    bool operator!=(const FinSet& o) const { return !(*this == o); }

private:
    struct Node {
        std::size_t size = 0;
        std::vector<std::string> labels;
        std::shared_ptr<const Node> left, right;
    };
    explicit FinSet(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static bool same(const std::shared_ptr<const Node>& a, const std::shared_ptr<const Node>& b) {
        if (a == b) return true;
        if ((a->left == nullptr) != (b->left == nullptr) || a->size != b->size) return false;
        if (!a->left) return a->labels == b->labels;
        return same(a->left, b->left) && same(a->right, b->right);
    }
    std::shared_ptr<const Node> n_;
};

}  // namespace symalg
