#pragma once
/// \file smith.hpp
/// Integer matrices, Smith normal form and cohomology of cochain complexes
/// of finitely generated free abelian groups.
///
/// Elimination first runs on checked int64 and restarts on Integer when an
/// entry leaves the 64-bit range.

#include "integer.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace symalg {

class ZMatrix {
public:
    ZMatrix() = default;
    ZMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    ZMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries) : r_(rows), c_(cols), a_(std::move(entries)) {
        if (a_.size() != r_ * c_) throw InputError("matrix entry count does not match its shape");
    }
    static ZMatrix identity(std::size_t n) {
        ZMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static ZMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < m.r_; ++i) {
            if (rows[i].size() != m.c_) throw InputError("ragged matrix rows");
            for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<Integer>& entries() const { return a_; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
    }
    bool operator==(const ZMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const ZMatrix& o) const { return !(*this == o); }

    ZMatrix operator*(const ZMatrix& o) const {
        if (c_ != o.r_) throw InputError("matrix product shape mismatch");
        ZMatrix out(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Integer& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    if (o(k, j) != 0) out(i, j) += x * o(k, j);
            }
        return out;
    }
    ZMatrix operator+(const ZMatrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix sum shape mismatch");
        ZMatrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }
    ZMatrix operator-() const {
        ZMatrix out = *this;
        for (auto& x : out.a_) x = -x;
        return out;
    }
    ZMatrix operator-(const ZMatrix& o) const { return *this + (-o); }
    ZMatrix operator*(const Integer& s) const {
        ZMatrix out = *this;
        for (auto& x : out.a_) x *= s;
        return out;
    }
    ZMatrix transpose() const {
        ZMatrix out(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < r_; ++i) {
            s += i ? ", [" : "[";
            for (std::size_t j = 0; j < c_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Integer> a_;
};

// D is diagonal with factors d_1 | d_2 | ... > 0 followed by zeros;
// U * D * V == original and left * original * right == D.
struct SmithDecomposition {
    ZMatrix D, U, V, left, right;
    std::vector<Integer> factors;

    std::size_t rank() const { return factors.size(); }
};

namespace detail {

struct SmithOverflow {};

inline std::int64_t sub_mul(std::int64_t x, std::int64_t q, std::int64_t y) {
    std::int64_t p, r;
    if (__builtin_mul_overflow(q, y, &p) || __builtin_sub_overflow(x, p, &r) ||
        r == std::numeric_limits<std::int64_t>::min())
        throw SmithOverflow{};
    return r;
}
inline Integer sub_mul(const Integer& x, const Integer& q, const Integer& y) { return x - q * y; }

inline std::int64_t magnitude(std::int64_t x) { return x < 0 ? -x : x; }
inline Integer magnitude(const Integer& x) { return x < 0 ? Integer(-x) : x; }

template <class T>
class SmithEngine {
public:
    SmithEngine(std::size_t m, std::size_t n, std::vector<T> a, bool track) : m_(m), n_(n), a_(std::move(a)), track_(track) {
        if (track_) {
            L_ = eye(m_);
            Li_ = eye(m_);
            R_ = eye(n_);
            Ri_ = eye(n_);
        }
    }

    void run() {
        const std::size_t lim = std::min(m_, n_);
        for (t_ = 0; t_ < lim; ++t_) {
            if (!place_smallest(t_, m_, t_, n_)) break;
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t_ + 1; i < m_; ++i)
                    if (at(i, t_) != 0) {
                        row_axpy(i, at(i, t_) / at(t_, t_), t_);
                        dirty |= at(i, t_) != 0;
                    }
                for (std::size_t j = t_ + 1; j < n_; ++j)
                    if (at(t_, j) != 0) {
                        col_axpy(j, at(t_, j) / at(t_, t_), t_);
                        dirty |= at(t_, j) != 0;
                    }
                if (dirty) {
                    place_smallest_cross();
                    continue;
                }
                std::size_t bad = m_;
                for (std::size_t i = t_ + 1; i < m_ && bad == m_; ++i)
                    for (std::size_t j = t_ + 1; j < n_; ++j)
                        if (at(i, j) % at(t_, t_) != 0) {
                            bad = i;
                            break;
                        }
                if (bad == m_) break;
                row_axpy(t_, T(-1), bad);
            }
            if (at(t_, t_) < 0) row_neg(t_);
        }
    }

    std::size_t rank() const { return t_; }
    const T& entry(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<T>& L() const { return L_; }
    const std::vector<T>& Li() const { return Li_; }
    const std::vector<T>& R() const { return R_; }
    const std::vector<T>& Ri() const { return Ri_; }

private:
    static std::vector<T> eye(std::size_t k) {
        std::vector<T> e(k * k, T(0));
        for (std::size_t i = 0; i < k; ++i) e[i * k + i] = T(1);
        return e;
    }
    T& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

    // Moves the entry of least nonzero magnitude in [r0,r1) x [c0,c1) to (t,t).
    bool place_smallest(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        std::size_t bi = r1, bj = c1;
        T best(0);
        for (std::size_t i = r0; i < r1; ++i) {
            for (std::size_t j = c0; j < c1; ++j) {
                const T& x = at(i, j);
                if (x == 0) continue;
                T mx = magnitude(x);
                if (bi == r1 || mx < best) {
                    best = mx;
                    bi = i;
                    bj = j;
                    if (best == 1) break;
                }
            }
            if (bi != r1 && best == 1) break;
        }
        if (bi == r1) return false;
        if (bi != t_) row_swap(bi, t_);
        if (bj != t_) col_swap(bj, t_);
        return true;
    }

    void place_smallest_cross() {
        std::size_t bi = t_, bj = t_;
        T best = magnitude(at(t_, t_));
        for (std::size_t i = t_ + 1; i < m_; ++i)
            if (at(i, t_) != 0 && magnitude(at(i, t_)) < best) best = magnitude(at(i, t_)), bi = i, bj = t_;
        for (std::size_t j = t_ + 1; j < n_; ++j)
            if (at(t_, j) != 0 && magnitude(at(t_, j)) < best) best = magnitude(at(t_, j)), bi = t_, bj = j;
        if (bi != t_) row_swap(bi, t_);
        if (bj != t_) col_swap(bj, t_);
    }

    // row_i -= q * row_j
    void row_axpy(std::size_t i, const T& q, std::size_t j) {
        for (std::size_t c = t_; c < n_; ++c)
            if (at(j, c) != 0) at(i, c) = sub_mul(at(i, c), q, at(j, c));
        if (!track_) return;
        for (std::size_t c = 0; c < m_; ++c)
            if (L_[j * m_ + c] != 0) L_[i * m_ + c] = sub_mul(L_[i * m_ + c], q, L_[j * m_ + c]);
        for (std::size_t r = 0; r < m_; ++r)
            if (Li_[r * m_ + i] != 0) Li_[r * m_ + j] = sub_mul(Li_[r * m_ + j], -q, Li_[r * m_ + i]);
    }
    // col_i -= q * col_j
    void col_axpy(std::size_t i, const T& q, std::size_t j) {
        for (std::size_t r = t_; r < m_; ++r)
            if (at(r, j) != 0) at(r, i) = sub_mul(at(r, i), q, at(r, j));
        if (!track_) return;
        for (std::size_t r = 0; r < n_; ++r)
            if (R_[r * n_ + j] != 0) R_[r * n_ + i] = sub_mul(R_[r * n_ + i], q, R_[r * n_ + j]);
        for (std::size_t c = 0; c < n_; ++c)
            if (Ri_[i * n_ + c] != 0) Ri_[j * n_ + c] = sub_mul(Ri_[j * n_ + c], -q, Ri_[i * n_ + c]);
    }
    void row_swap(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n_; ++c) std::swap(at(i, c), at(j, c));
        if (!track_) return;
        for (std::size_t c = 0; c < m_; ++c) std::swap(L_[i * m_ + c], L_[j * m_ + c]);
        for (std::size_t r = 0; r < m_; ++r) std::swap(Li_[r * m_ + i], Li_[r * m_ + j]);
    }
    void col_swap(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m_; ++r) std::swap(at(r, i), at(r, j));
        if (!track_) return;
        for (std::size_t r = 0; r < n_; ++r) std::swap(R_[r * n_ + i], R_[r * n_ + j]);
        for (std::size_t c = 0; c < n_; ++c) std::swap(Ri_[i * n_ + c], Ri_[j * n_ + c]);
    }
    void row_neg(std::size_t i) {
        for (std::size_t c = 0; c < n_; ++c) at(i, c) = -at(i, c);
        if (!track_) return;
        for (std::size_t c = 0; c < m_; ++c) L_[i * m_ + c] = -L_[i * m_ + c];
        for (std::size_t r = 0; r < m_; ++r) Li_[r * m_ + i] = -Li_[r * m_ + i];
    }

    std::size_t m_, n_, t_ = 0;
    std::vector<T> a_;
    bool track_;
    std::vector<T> L_, Li_, R_, Ri_;
};

inline bool fits_int64(const ZMatrix& a) {
    const Integer lo = std::numeric_limits<std::int64_t>::min() / 4, hi = std::numeric_limits<std::int64_t>::max() / 4;
    return std::all_of(a.entries().begin(), a.entries().end(), [&](const Integer& x) { return x > lo && x < hi; });
}

template <class T>
std::vector<T> entries_as(const ZMatrix& a) {
    std::vector<T> out;
    out.reserve(a.entries().size());
    for (auto& x : a.entries()) out.push_back(static_cast<T>(x));
    return out;
}

template <class T>
ZMatrix to_zmatrix(std::size_t r, std::size_t c, const std::vector<T>& v) {
    ZMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Integer(v[i * c + j]);
    return m;
}

template <class T>
SmithDecomposition smith_with(const ZMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithEngine<T> e(m, n, entries_as<T>(a), true);
    e.run();
    SmithDecomposition s;
    s.D = ZMatrix(m, n);
    for (std::size_t i = 0; i < e.rank(); ++i) {
        s.D(i, i) = Integer(e.entry(i, i));
        s.factors.push_back(s.D(i, i));
    }
    s.left = to_zmatrix(m, m, e.L());
    s.U = to_zmatrix(m, m, e.Li());
    s.right = to_zmatrix(n, n, e.R());
    s.V = to_zmatrix(n, n, e.Ri());
    return s;
}

template <class T>
std::vector<Integer> factors_with(const ZMatrix& a) {
    SmithEngine<T> e(a.rows(), a.cols(), entries_as<T>(a), false);
    e.run();
    std::vector<Integer> f;
    for (std::size_t i = 0; i < e.rank(); ++i) f.push_back(Integer(e.entry(i, i)));
    return f;
}

}  // namespace detail

inline SmithDecomposition smith(const ZMatrix& a) {
    if (detail::fits_int64(a)) {
        try {
            return detail::smith_with<std::int64_t>(a);
        } catch (const detail::SmithOverflow&) {
        }
    }
    return detail::smith_with<Integer>(a);
}

// Nonzero invariant factors only; skips the transformation matrices.
inline std::vector<Integer> invariant_factors(const ZMatrix& a) {
    if (detail::fits_int64(a)) {
        try {
            return detail::factors_with<std::int64_t>(a);
        } catch (const detail::SmithOverflow&) {
        }
    }
    return detail::factors_with<Integer>(a);
}

inline bool is_unimodular(const ZMatrix& u) {
    if (u.rows() != u.cols()) return false;
    auto f = invariant_factors(u);
    return f.size() == u.rows() && std::all_of(f.begin(), f.end(), [](const Integer& x) { return x == 1; });
}

// Columns spanning the integer kernel {x : a x = 0}, a saturated lattice.
inline ZMatrix integer_kernel(const ZMatrix& a) {
    auto s = smith(a);
    const std::size_t n = a.cols(), r = s.rank();
    ZMatrix k(n, n - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r; j < n; ++j) k(i, j - r) = s.right(i, j);
    return k;
}

struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        if (free_rank) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (auto& t : torsion) s += (s.empty() ? "Z/" : " + Z/") + t.str();
        return s;
    }
};

// Cochain complex C^lo -> ... -> C^hi with d^k : C^k -> C^{k+1}, stored as a
// rank(k+1) x rank(k) matrix acting on column vectors.
class ChainComplex {
public:
    ChainComplex(int lo, std::vector<std::vector<std::string>> bases, std::vector<ZMatrix> d)
        : lo_(lo), bases_(std::move(bases)), d_(std::move(d)) {
        if (bases_.empty()) throw InputError("a complex needs at least one degree");
        if (d_.size() + 1 != bases_.size()) throw InputError("need one differential between each pair of adjacent degrees");
        for (std::size_t k = 0; k < d_.size(); ++k)
            if (d_[k].cols() != bases_[k].size() || d_[k].rows() != bases_[k + 1].size())
                throw InputError("differential out of degree " + std::to_string(lo_ + static_cast<int>(k)) + " has the wrong shape");
        for (std::size_t k = 0; k + 1 < d_.size(); ++k)
            if (!(d_[k + 1] * d_[k]).is_zero())
                throw InputError("d o d != 0 out of degree " + std::to_string(lo_ + static_cast<int>(k)));
    }

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(bases_.size()) - 1; }
    bool has_degree(int k) const { return k >= lo() && k <= hi(); }
    std::size_t rank(int k) const { return has_degree(k) ? bases_[idx(k)].size() : 0; }
    const std::vector<std::string>& labels(int k) const { return bases_.at(idx(k)); }

    // d^k; the zero map when k or k+1 lies outside the range.
    ZMatrix d(int k) const {
        if (k >= lo() && k < hi()) return d_[idx(k)];
        return ZMatrix(rank(k + 1), rank(k));
    }

private:
    std::size_t idx(int k) const { return static_cast<std::size_t>(k - lo_); }
    int lo_;
    std::vector<std::vector<std::string>> bases_;
    std::vector<ZMatrix> d_;
};

// H^k = ker d^k / im d^{k-1} for every degree in range.
inline std::vector<HomologyGroup> homology(const ChainComplex& c) {
    std::vector<std::vector<Integer>> f;  // f[k-lo+1] holds the factors of d^k, k = lo-1 .. hi
    f.emplace_back();
    for (int k = c.lo(); k <= c.hi(); ++k) f.push_back(k < c.hi() ? invariant_factors(c.d(k)) : std::vector<Integer>{});
    std::vector<HomologyGroup> out;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        const auto& in = f[static_cast<std::size_t>(k - c.lo())];
        const auto& outgoing = f[static_cast<std::size_t>(k - c.lo() + 1)];
        HomologyGroup h;
        h.free_rank = c.rank(k) - outgoing.size() - in.size();
        for (auto& x : in)
            if (x != 1) h.torsion.push_back(x);
        out.push_back(std::move(h));
    }
    return out;
}

// Exactness at every degree >= from.
inline bool is_exact(const ChainComplex& c, int from) {
    auto h = homology(c);
    for (int k = std::max(from, c.lo()); k <= c.hi(); ++k)
        if (!h[static_cast<std::size_t>(k - c.lo())].is_zero()) return false;
    return true;
}
inline bool is_exact(const ChainComplex& c) { return is_exact(c, c.lo()); }

}  // namespace symalg
