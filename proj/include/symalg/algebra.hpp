#pragma once
/// \file algebra.hpp
/// Commutative algebras free of finite rank over a base ring, given by
/// structure constants, and free modules with an action of such an algebra.
///
/// Elements of an algebra B are ordinary Scalars of the extension ring
/// `B.ring()`, so algebras can serve as base rings of further algebras.
/// Matrices act on column vectors; column j of an action matrix is the image
/// of the j-th module basis vector.

#include "rings.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symalg {

class AxiomViolation : public InputError {
public:
    AxiomViolation(std::string axiom_, std::vector<std::size_t> idx)
        : InputError(format(axiom_, idx)), axiom(std::move(axiom_)), indices(std::move(idx)) {}
    std::string axiom;
    std::vector<std::size_t> indices;  // 1-based

private:
    static std::string format(const std::string& a, const std::vector<std::size_t>& idx) {
        std::string s = a + " (";
        for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
        return s + ")";
    }
};

class MultTableAlgebra {
public:
    MultTableAlgebra() = default;
    explicit MultTableAlgebra(BaseRing ring) : ring_(std::move(ring)) {
        if (ring_.kind() != RingKind::Extension) throw InputError("not an algebra ring: " + ring_.describe());
    }

    const BaseRing& ring() const { return ring_; }
    const ExtensionTable& data() const { return ring_.table(); }
    const BaseRing& base() const { return data().base; }
    std::size_t rank() const { return data().rank; }
    const std::vector<std::string>& labels() const { return data().labels; }
    const std::string& name() const { return data().name; }
    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return data().c(i, j, k); }
    const std::vector<Scalar>& unit_coords() const { return data().unit; }

    Scalar element(Coords coords) const { return make_ext(ring_, std::move(coords)); }
    Scalar basis(std::size_t i) const {
        Coords c(rank(), zero(base()));
        c.at(i) = one(base());
        return element(std::move(c));
    }
    Scalar unit() const { return one(ring_); }
    Scalar lift(const Scalar& a) const { return embed(a, ring_); }
    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (labels()[i] == label) return i;
        throw InputError("no basis element '" + label + "' in " + ring_.describe());
    }
    bool operator==(const MultTableAlgebra& o) const { return ring_ == o.ring_; }
    bool operator!=(const MultTableAlgebra& o) const { return !(ring_ == o.ring_); }

private:
    BaseRing ring_;
};

namespace detail {

inline Coords basis_product(const ExtensionTable& t, std::size_t i, std::size_t j) {
    Coords v(t.rank);
    for (std::size_t k = 0; k < t.rank; ++k) v[k] = t.c(i, j, k);
    return v;
}

// (sum_i x_i e_i) e_j in coordinates.
inline Coords times_basis(const ExtensionTable& t, const Coords& x, std::size_t j) {
    Coords v(t.rank, zero(t.base));
    for (std::size_t i = 0; i < t.rank; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t k = 0; k < t.rank; ++k) v[k] += x[i] * t.c(i, j, k);
    }
    return v;
}

inline void validate_table(const ExtensionTable& t) {
    const std::size_t n = t.rank;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (t.c(i, j, k) != t.c(j, i, k)) throw AxiomViolation("non-commutative", {i + 1, j + 1, k + 1});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Coords ij = basis_product(t, i, j);
            for (std::size_t l = 0; l < n; ++l) {
                Coords left = times_basis(t, ij, l);
                Coords right = times_basis(t, basis_product(t, j, l), i);  // e_i (e_j e_l), commutative
                for (std::size_t k = 0; k < n; ++k)
                    if (left[k] != right[k]) throw AxiomViolation("non-associative", {i + 1, j + 1, l + 1});
            }
        }
    for (std::size_t j = 0; j < n; ++j) {
        Coords v = times_basis(t, t.unit, j);
        for (std::size_t k = 0; k < n; ++k)
            if (v[k] != (k == j ? one(t.base) : zero(t.base))) throw AxiomViolation("bad unit", {j + 1});
    }
}

}  // namespace detail

// table[(i*rank + j)*rank + k] = c_{ij}^k.
inline MultTableAlgebra make_algebra(const BaseRing& base, std::vector<std::string> labels, std::vector<Scalar> table,
                                     std::vector<Scalar> unit, std::string name = "", bool validate = true) {
    const std::size_t n = labels.size();
    if (table.size() != n * n * n) throw InputError("table needs rank^3 = " + std::to_string(n * n * n) + " entries");
    if (unit.size() != n) throw InputError("unit needs rank coordinates");
    for (auto& x : table) x = embed(x, base);
    for (auto& x : unit) x = embed(x, base);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (labels[i] == labels[j]) throw InputError("duplicate basis label '" + labels[i] + "'");
    auto t = std::make_shared<ExtensionTable>();
    t->base = base;
    t->rank = n;
    t->labels = std::move(labels);
    t->table = std::move(table);
    t->unit = std::move(unit);
    t->name = std::move(name);
    if (validate) detail::validate_table(*t);
    return MultTableAlgebra(BaseRing::extension(t));
}

inline Scalar alg_mul(const Scalar& x, const Scalar& y) {
    if (x.ring() != y.ring()) throw RingMismatch("alg_mul of elements of different algebras");
    return x * y;
}

// A[x]/(x^n + f_{n-1} x^{n-1} + ... + f_0) with basis 1, x, ..., x^{n-1}.
inline MultTableAlgebra monic_quotient(const BaseRing& base, const std::vector<Scalar>& f, const std::string& x = "x",
                                       std::string name = "") {
    const std::size_t n = f.size();
    if (n == 0) throw InputError("monic_quotient needs degree >= 1");
    // powers[p] = x^p reduced, for p < 2n - 1
    std::vector<Coords> powers;
    for (std::size_t p = 0; p < 2 * n - 1; ++p) {
        Coords v(n, zero(base));
        if (p < n) {
            v[p] = one(base);
        } else {
            const Coords& prev = powers[p - 1];
            // x * prev: shift, and replace x^n by -sum f_i x^i
            Scalar top = prev[n - 1];
            for (std::size_t i = n - 1; i >= 1; --i) v[i] = prev[i - 1];
            v[0] = zero(base);
            for (std::size_t i = 0; i < n; ++i) v[i] -= top * embed(f[i], base);
        }
        powers.push_back(std::move(v));
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? x : x + "^" + std::to_string(i));
    std::vector<Scalar> table(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) table[(i * n + j) * n + k] = powers[i + j][k];
    std::vector<Scalar> unit(n, zero(base));
    unit[0] = one(base);
    return make_algebra(base, labels, table, unit, std::move(name), false);
}

// B1 x B2 with basis (e_i, 0) then (0, f_j).
inline MultTableAlgebra product_algebra(const MultTableAlgebra& b1, const MultTableAlgebra& b2) {
    if (b1.base() != b2.base()) throw RingMismatch("product of algebras over different bases");
    const std::size_t n1 = b1.rank(), n2 = b2.rank(), n = n1 + n2;
    std::vector<Scalar> table(n * n * n, zero(b1.base()));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            for (std::size_t k = 0; k < n1; ++k) table[(i * n + j) * n + k] = b1.c(i, j, k);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t k = 0; k < n2; ++k) table[((n1 + i) * n + n1 + j) * n + n1 + k] = b2.c(i, j, k);
    std::vector<std::string> labels;
    for (auto& l : b1.labels()) labels.push_back(l + "_1");
    for (auto& l : b2.labels()) labels.push_back(l + "_2");
    std::vector<Scalar> unit = b1.unit_coords();
    unit.insert(unit.end(), b2.unit_coords().begin(), b2.unit_coords().end());
    return make_algebra(b1.base(), labels, table, unit, "", false);
}

// ---------------------------------------------------------------------------
// Good triples

class GoodTriple {
public:
    GoodTriple(MultTableAlgebra algebra, std::size_t module_rank, std::vector<ScalarMatrix> action)
        : alg_(std::move(algebra)), n_(module_rank), action_(std::move(action)) {
        if (action_.size() != alg_.rank()) throw InputError("one action matrix per algebra basis element required");
        for (auto& m : action_) {
            if (m.size() != n_) throw InputError("action matrix has wrong size");
            for (auto& row : m) {
                if (row.size() != n_) throw InputError("action matrix has wrong size");
                for (auto& x : row) x = embed(x, base());
            }
        }
        validate();
    }

    const MultTableAlgebra& algebra() const { return alg_; }
    const BaseRing& base() const { return alg_.base(); }
    std::size_t module_rank() const { return n_; }
    const std::vector<ScalarMatrix>& action() const { return action_; }

private:
    void validate() const;

    MultTableAlgebra alg_;
    std::size_t n_;
    std::vector<ScalarMatrix> action_;
};

inline ScalarMatrix identity_matrix(const BaseRing& r, std::size_t n) {
    ScalarMatrix m(n, std::vector<Scalar>(n, zero(r)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = one(r);
    return m;
}

inline ScalarMatrix zero_matrix(const BaseRing& r, std::size_t rows, std::size_t cols) {
    return ScalarMatrix(rows, std::vector<Scalar>(cols, zero(r)));
}

inline ScalarMatrix matmul(const BaseRing& r, const ScalarMatrix& a, const ScalarMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    ScalarMatrix c = zero_matrix(r, n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline void axpy(ScalarMatrix& acc, const Scalar& s, const ScalarMatrix& m) {
    if (s.is_zero()) return;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) acc[i][j] += s * m[i][j];
}

inline void GoodTriple::validate() const {
    const BaseRing& a = base();
    const std::size_t r = alg_.rank();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j) {
            ScalarMatrix lhs = matmul(a, action_[i], action_[j]);
            ScalarMatrix rhs = zero_matrix(a, n_, n_);
            for (std::size_t k = 0; k < r; ++k) axpy(rhs, alg_.c(i, j, k), action_[k]);
            if (lhs != rhs) throw AxiomViolation("action does not respect the table", {i + 1, j + 1});
        }
    ScalarMatrix u = zero_matrix(a, n_, n_);
    for (std::size_t k = 0; k < r; ++k) axpy(u, alg_.unit_coords()[k], action_[k]);
    if (u != identity_matrix(a, n_)) throw AxiomViolation("unit does not act as the identity", {});
}

// M = B acting on itself.
inline GoodTriple regular_triple(const MultTableAlgebra& b) {
    const std::size_t n = b.rank();
    std::vector<ScalarMatrix> act;
    for (std::size_t i = 0; i < n; ++i) {
        ScalarMatrix m = zero_matrix(b.base(), n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m[k][j] = b.c(i, j, k);
        act.push_back(std::move(m));
    }
    return GoodTriple(b, n, std::move(act));
}

inline ScalarMatrix mult_matrix(const Scalar& b, const GoodTriple& triple) {
    if (b.ring() != triple.algebra().ring())
        throw RingMismatch("element of " + b.ring().describe() + " does not act on this module");
    ScalarMatrix m = zero_matrix(triple.base(), triple.module_rank(), triple.module_rank());
    for (std::size_t i = 0; i < triple.algebra().rank(); ++i) axpy(m, b.coords()[i], triple.action()[i]);
    return m;
}

inline ScalarMatrix mult_matrix(const Scalar& b) {
    if (b.kind() != RingKind::Extension) throw InputError("mult_matrix needs an algebra element");
    return detail::ext_mult_matrix(b);
}

// ---------------------------------------------------------------------------
// Tensor products and towers

// A (x)_R A~ for A, A~ each equal to R, an algebra over R, or a polynomial ring
// over R, with the two canonical maps into it.
struct BaseTensor {
    BaseRing ring;
    BaseRing left, right;
    std::function<Scalar(const Scalar&)> from_left, from_right;
};

inline MultTableAlgebra tensor_algebra_over(const MultTableAlgebra& b, const MultTableAlgebra& bt,
                                            const BaseTensor& bases, std::string name = "");

inline BaseTensor tensor_base(const BaseRing& a, const BaseRing& at, const BaseRing& r) {
    BaseTensor out{r, a, at, nullptr, nullptr};
    auto embed_into = [](BaseRing target) { return [target](const Scalar& x) { return embed(x, target); }; };
    if (a == r) {
        out.ring = at;
        out.from_left = embed_into(at);
        out.from_right = [](const Scalar& x) { return x; };
        return out;
    }
    if (at == r) {
        out.ring = a;
        out.from_left = [](const Scalar& x) { return x; };
        out.from_right = embed_into(a);
        return out;
    }
    if (a.kind() == RingKind::Poly && at.kind() == RingKind::Poly && a.coefficients() == r && at.coefficients() == r) {
        std::vector<std::string> vars = a.variables();
        for (auto& v : at.variables()) {
            if (std::find(vars.begin(), vars.end(), v) != vars.end())
                throw InputError("polynomial bases share the variable '" + v + "'");
            vars.push_back(v);
        }
        out.ring = BaseRing::poly(r, vars);
        out.from_left = embed_into(out.ring);
        out.from_right = embed_into(out.ring);
        return out;
    }
    if (a.kind() == RingKind::Extension && at.kind() == RingKind::Extension && a.table().base == r &&
        at.table().base == r) {
        MultTableAlgebra x(a), y(at);
        BaseTensor trivial{r, r, r, [](const Scalar& s) { return s; }, [](const Scalar& s) { return s; }};
        MultTableAlgebra xy = tensor_algebra_over(x, y, trivial);
        out.ring = xy.ring();
        const std::size_t n = x.rank(), nt = y.rank();
        out.from_left = [xy, n, nt, y](const Scalar& s) {
            Coords c(n * nt);
            for (std::size_t j = 0; j < nt; ++j)
                for (std::size_t i = 0; i < n; ++i) c[i + n * j] = s.coords()[i] * y.unit_coords()[j];
            return xy.element(std::move(c));
        };
        out.from_right = [xy, n, nt, x](const Scalar& s) {
            Coords c(n * nt);
            for (std::size_t j = 0; j < nt; ++j)
                for (std::size_t i = 0; i < n; ++i) c[i + n * j] = x.unit_coords()[i] * s.coords()[j];
            return xy.element(std::move(c));
        };
        return out;
    }
    throw RingMismatch("cannot form " + a.describe() + " (x) " + at.describe() + " over " + r.describe());
}

// Basis e_i (x) f_j at index i + rank(B) * j (Convention: (x, y) -> x + m(y-1)).
inline MultTableAlgebra tensor_algebra_over(const MultTableAlgebra& b, const MultTableAlgebra& bt,
                                            const BaseTensor& bases, std::string name) {
    if (b.base() != bases.left || bt.base() != bases.right) throw RingMismatch("tensor_algebra base mismatch");
    const std::size_t n = b.rank(), nt = bt.rank(), N = n * nt;
    auto idx = [n](std::size_t i, std::size_t j) { return i + n * j; };
    std::vector<Scalar> table(N * N * N, zero(bases.ring));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t j2 = 0; j2 < nt; ++j2)
                    for (std::size_t k = 0; k < n; ++k) {
                        if (b.c(i, i2, k).is_zero()) continue;
                        Scalar left = bases.from_left(b.c(i, i2, k));
                        for (std::size_t l = 0; l < nt; ++l) {
                            if (bt.c(j, j2, l).is_zero()) continue;
                            table[(idx(i, j) * N + idx(i2, j2)) * N + idx(k, l)] =
                                left * bases.from_right(bt.c(j, j2, l));
                        }
                    }
    std::vector<std::string> labels(N);
    std::vector<Scalar> unit(N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            labels[idx(i, j)] = b.labels()[i] + "(x)" + bt.labels()[j];
            unit[idx(i, j)] = bases.from_left(b.unit_coords()[i]) * bases.from_right(bt.unit_coords()[j]);
        }
    return make_algebra(bases.ring, labels, table, unit, std::move(name), false);
}

struct TensorAlgebra {
    MultTableAlgebra algebra;  // B (x)_R B~ over A (x)_R A~
    BaseTensor bases;

    // x (x) y as an element of the tensor algebra.
    Scalar pure(const Scalar& x, const Scalar& y) const {
        const std::size_t n = x.coords().size(), nt = y.coords().size();
        Coords c(n * nt);
        for (std::size_t j = 0; j < nt; ++j)
            for (std::size_t i = 0; i < n; ++i) c[i + n * j] = bases.from_left(x.coords()[i]) * bases.from_right(y.coords()[j]);
        return algebra.element(std::move(c));
    }
};

inline TensorAlgebra tensor_algebra(const MultTableAlgebra& b, const MultTableAlgebra& bt, const BaseRing& r) {
    BaseTensor bases = tensor_base(b.base(), bt.base(), r);
    return TensorAlgebra{tensor_algebra_over(b, bt, bases), bases};
}

// C over B (C.base() == B.ring()) viewed over A = B.base(); basis alpha_i beta_j
// at index i + m * j.
inline MultTableAlgebra tower_compose(const MultTableAlgebra& b, const MultTableAlgebra& c, std::string name = "") {
    if (c.base() != b.ring())
        throw RingMismatch("tower mismatch: C is over " + c.base().describe() + ", not over " + b.ring().describe());
    const std::size_t m = b.rank(), n = c.rank(), N = m * n;
    const BaseRing& a = b.base();
    auto idx = [m](std::size_t i, std::size_t j) { return i + m * j; };
    std::vector<Scalar> table(N * N * N, zero(a));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t i2 = 0; i2 < m; ++i2) {
            Scalar aa = b.basis(i) * b.basis(i2);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t j2 = 0; j2 < n; ++j2)
                    for (std::size_t l = 0; l < n; ++l) {
                        if (c.c(j, j2, l).is_zero()) continue;
                        Scalar v = aa * c.c(j, j2, l);
                        for (std::size_t k = 0; k < m; ++k)
                            table[(idx(i, j) * N + idx(i2, j2)) * N + idx(k, l)] = v.coords()[k];
                    }
        }
    std::vector<std::string> labels(N);
    std::vector<Scalar> unit(N);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            labels[idx(i, j)] = b.labels()[i] + "*" + c.labels()[j];
            unit[idx(i, j)] = c.unit_coords()[j].coords()[i];
        }
    return make_algebra(a, labels, table, unit, std::move(name), false);
}

// An element of C (over B) rewritten in the composed algebra over A.
inline Scalar restrict_scalars(const Scalar& x, const MultTableAlgebra& composed) {
    const std::size_t n = x.coords().size();
    const std::size_t m = n ? composed.rank() / n : 0;
    Coords out(composed.rank());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) out[i + m * j] = x.coords()[j].coords()[i];
    return composed.element(std::move(out));
}

}  // namespace symalg
