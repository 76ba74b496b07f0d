#pragma once

#include "integer.hpp"

#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace symalg {

// A bijection of {0, ..., n-1}; images[i] is the image of i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (auto x : img_) {
            if (x >= img_.size() || seen[x]) throw InputError("not a permutation");
            seen[x] = true;
        }
    }
    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        return Permutation(std::move(v));
    }
    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
        auto p = identity(n);
        std::swap(p.img_.at(a), p.img_.at(b));
        return p;
    }
    // Cycle (c_0 c_1 ... c_k): c_i -> c_{i+1}.
    static Permutation cycle(std::size_t n, const std::vector<std::uint32_t>& c) {
        auto p = identity(n);
        for (std::size_t i = 0; i < c.size(); ++i) p.img_.at(c[i]) = c[(i + 1) % c.size()];
        return Permutation(p.img_);
    }

    std::size_t size() const { return img_.size(); }
    std::uint32_t operator()(std::size_t i) const { return img_[i]; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    // (this * o)(i) = this(o(i))
    Permutation operator*(const Permutation& o) const {
        if (o.size() != size()) throw InputError("composing permutations of different degree");
        std::vector<std::uint32_t> v(size());
        for (std::size_t i = 0; i < size(); ++i) v[i] = img_[o.img_[i]];
        return Permutation(std::move(v));
    }
    Permutation inverse() const {
        std::vector<std::uint32_t> v(size());
        for (std::size_t i = 0; i < size(); ++i) v[img_[i]] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(v));
    }
    int sign() const {
        std::vector<bool> seen(size(), false);
        int s = 1;
        for (std::size_t i = 0; i < size(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                ++len;
            }
            if (len % 2 == 0) s = -s;
        }
        return s;
    }
    bool is_identity() const {
        for (std::size_t i = 0; i < size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }
    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
    std::vector<std::uint32_t> img_;
};

// A subgroup of S_n given by generators.
class PermGroup {
public:
    PermGroup(std::size_t n, std::vector<Permutation> gens) : n_(n), gens_(std::move(gens)) {
        for (auto& g : gens_)
            if (g.size() != n_) throw InputError("generator of wrong degree");
    }
    // S_n via adjacent transpositions.
    static PermGroup symmetric(std::size_t n) {
        std::vector<Permutation> g;
        for (std::size_t i = 0; i + 1 < n; ++i) g.push_back(Permutation::transposition(n, i, i + 1));
        return PermGroup(n, std::move(g));
    }

    std::size_t degree() const { return n_; }
    const std::vector<Permutation>& generators() const { return gens_; }

    // All elements, by breadth-first closure.
    std::vector<Permutation> elements(std::size_t limit = 1u << 22) const {
        std::set<Permutation> seen{Permutation::identity(n_)};
        std::deque<Permutation> queue{Permutation::identity(n_)};
        while (!queue.empty()) {
            Permutation p = queue.front();
            queue.pop_front();
            for (auto& g : gens_) {
                Permutation q = g * p;
                if (seen.insert(q).second) {
                    if (seen.size() > limit) throw ResourceLimit("group closure exceeds " + std::to_string(limit));
                    queue.push_back(q);
                }
            }
        }
        return {seen.begin(), seen.end()};
    }

private:
    std::size_t n_;
    std::vector<Permutation> gens_;
};

// The three standard ways of placing products of symmetric groups inside a
// bigger symmetric group.
namespace embedding {

// S_{n_1} x ... x S_{n_r} in S_{n_1+...+n_r}, blocks of consecutive slots.
inline Permutation product(const std::vector<Permutation>& parts) {
    std::vector<std::uint32_t> v;
    std::uint32_t offset = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < p.size(); ++i) v.push_back(offset + p(i));
        offset += static_cast<std::uint32_t>(p.size());
    }
    return Permutation(std::move(v));
}

inline PermGroup product_group(const std::vector<std::size_t>& sizes) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    std::vector<Permutation> gens;
    std::size_t offset = 0;
    for (auto s : sizes) {
        for (std::size_t i = 0; i + 1 < s; ++i) gens.push_back(Permutation::transposition(total, offset + i, offset + i + 1));
        offset += s;
    }
    return PermGroup(total, std::move(gens));
}

// (sigma, pi) in S_m x S_n acts on the grid cell x + m*y (0-based) by
// (x, y) -> (sigma(x), pi(y)).
inline Permutation grid(const Permutation& sigma, const Permutation& pi) {
    const std::size_t m = sigma.size(), n = pi.size();
    std::vector<std::uint32_t> v(m * n);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < m; ++x) v[x + m * y] = static_cast<std::uint32_t>(sigma(x) + m * pi(y));
    return Permutation(std::move(v));
}

// S_m permutes the m columns {x + m*y : y}; S_n^m permutes within each column.
// Column c corresponds to the c-th tensor factor of (M^{(x)n})^{(x)m}.
inline Permutation wreath(const Permutation& outer, const std::vector<Permutation>& inner) {
    const std::size_t m = outer.size();
    if (inner.size() != m) throw InputError("wreath needs one inner permutation per column");
    const std::size_t n = m ? inner[0].size() : 0;
    std::vector<std::uint32_t> v(m * n);
    for (std::size_t x = 0; x < m; ++x) {
        if (inner[x].size() != n) throw InputError("inner permutations of different degree");
        for (std::size_t y = 0; y < n; ++y) v[x + m * y] = static_cast<std::uint32_t>(outer(x) + m * inner[x](y));
    }
    return Permutation(std::move(v));
}

inline PermGroup wreath_group(std::size_t m, std::size_t n) {
    std::vector<Permutation> gens;
    const auto idm = Permutation::identity(m), idn = Permutation::identity(n);
    for (std::size_t x = 0; x + 1 < m; ++x)
        gens.push_back(wreath(Permutation::transposition(m, x, x + 1), std::vector<Permutation>(m, idn)));
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y + 1 < n; ++y) {
            std::vector<Permutation> in(m, idn);
            in[x] = Permutation::transposition(n, y, y + 1);
            gens.push_back(wreath(idm, in));
        }
    return PermGroup(m * n, std::move(gens));
}

inline PermGroup grid_group(std::size_t m, std::size_t n) {
    std::vector<Permutation> gens;
    const auto idm = Permutation::identity(m), idn = Permutation::identity(n);
    for (std::size_t x = 0; x + 1 < m; ++x) gens.push_back(grid(Permutation::transposition(m, x, x + 1), idn));
    for (std::size_t y = 0; y + 1 < n; ++y) gens.push_back(grid(idm, Permutation::transposition(n, y, y + 1)));
    return PermGroup(m * n, std::move(gens));
}

}  // namespace embedding

}  // namespace symalg
