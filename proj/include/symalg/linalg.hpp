#pragma once
/// \file linalg.hpp
/// Gaussian elimination over the prime fields QQ and GF(p).

#include "rings.hpp"

#include <optional>
#include <vector>

namespace symalg {

using Vec = std::vector<Scalar>;

// Row-reduced spanning set, grown one vector at a time.
class RowSpace {
public:
    RowSpace(BaseRing field, std::size_t dim) : k_(std::move(field)), dim_(dim) {
        if (!k_.is_field()) throw InputError("RowSpace needs QQ or GF(p), got " + k_.describe());
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

    // Reduces v against the current rows; returns the remainder.
    Vec reduce(Vec v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Scalar c = v[pivots_[r]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!rows_[r][j].is_zero()) v[j] -= c * rows_[r][j];
        }
        return v;
    }

    bool contains(const Vec& v) const {
        for (auto& x : reduce(v))
            if (!x.is_zero()) return false;
        return true;
    }

    // True when v enlarged the span.
    bool insert(const Vec& v) {
        Vec w = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && w[p].is_zero()) ++p;
        if (p == dim_) return false;
        Scalar inv = inverse(w[p]);
        for (auto& x : w) x *= inv;
        for (auto& row : rows_) {
            Scalar c = row[p];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) row[j] -= c * w[j];
        }
        rows_.push_back(std::move(w));
        pivots_.push_back(p);
        return true;
    }

    const std::vector<Vec>& rows() const { return rows_; }

private:
    BaseRing k_;
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

// Basis of {x : M x = 0} for M given by rows over a field.
inline std::vector<Vec> kernel_basis(const BaseRing& k, const std::vector<Vec>& m, std::size_t cols) {
    RowSpace rs(k, cols);
    for (auto& r : m) rs.insert(r);
    std::vector<std::size_t> pivot_of_row;
    std::vector<int> pivot_col(cols, -1);
    for (std::size_t r = 0; r < rs.rows().size(); ++r) {
        std::size_t p = 0;
        while (rs.rows()[r][p].is_zero()) ++p;
        pivot_col[p] = static_cast<int>(r);
    }
    std::vector<Vec> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_col[f] >= 0) continue;
        Vec v(cols, zero(k));
        v[f] = one(k);
        for (std::size_t p = 0; p < cols; ++p)
            if (pivot_col[p] >= 0) v[p] = -rs.rows()[pivot_col[p]][f];
        out.push_back(std::move(v));
    }
    return out;
}

inline std::size_t rank_over_field(const BaseRing& k, const std::vector<Vec>& m, std::size_t cols) {
    RowSpace rs(k, cols);
    for (auto& r : m) rs.insert(r);
    return rs.rank();
}

}  // namespace symalg
