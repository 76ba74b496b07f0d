#pragma once
/// \file norm.hpp
/// Characteristic coefficients and the symmetrization morphism
///   theta: S_n(B|A) -> A,  for a B-module M free of rank n over A,
/// together with sampled checks of its functorial identities.
///
/// theta(t) is the scalar by which t acts on the top exterior power of M.  For
/// a tuple term c * e_{k_1} (x) ... (x) e_{k_n} the contribution is c times the
/// determinant of the matrix whose s-th column is the s-th column of the
/// action matrix of e_{k_s}.  That formula is multilinear, so it also makes
/// sense on non-invariant tensors; only its restriction to invariants is
/// independent of the basis ordering.

#include "hom.hpp"
#include "sampling.hpp"
#include "symfun.hpp"
#include "linalg.hpp"
#include "witness.hpp"

#include <string>
#include <vector>

namespace symalg {

struct CharPolynomial {
    std::vector<Scalar> coefficients;  // chi_0 = 1, ..., chi_n
    const Scalar& operator[](std::size_t k) const { return coefficients.at(k); }
    const Scalar& det() const { return coefficients.back(); }
};

inline std::vector<Scalar> char_coeffs_of(const BaseRing& a, const ScalarMatrix& x) {
    ScalarMatrix neg = x;
    for (auto& row : neg)
        for (auto& v : row) v = -v;
    return charpoly(a, neg);  // det(t - (-X)) = det(t + X)
}

inline CharPolynomial char_coeffs(const Scalar& b, const GoodTriple& triple) {
    return CharPolynomial{char_coeffs_of(triple.base(), mult_matrix(b, triple))};
}

// Determinant of the matrix whose column s is column s of the action of factors[s].
inline Scalar theta_pure(const std::vector<Scalar>& factors, const GoodTriple& triple) {
    const std::size_t n = triple.module_rank();
    if (factors.size() != n) throw InputError("theta: tensor degree differs from the module rank");
    ScalarMatrix m = zero_matrix(triple.base(), n, n);
    for (std::size_t s = 0; s < n; ++s) {
        ScalarMatrix a = mult_matrix(factors[s], triple);
        for (std::size_t r = 0; r < n; ++r) m[r][s] = a[r][s];
    }
    return det(triple.base(), m);
}

// The multilinear formula, without the invariance check.
inline Scalar theta_any(const TensorElement& t, const GoodTriple& triple) {
    const std::size_t n = triple.module_rank();
    if (t.n() != n)
        throw InputError("theta: tensor degree " + std::to_string(t.n()) + " differs from the module rank " + std::to_string(n));
    if (t.algebra() != triple.algebra()) throw RingMismatch("theta: tensor over a different algebra");
    const BaseRing& a = triple.base();
    Scalar acc = zero(a);
    ScalarMatrix m = zero_matrix(a, n, n);
    for (auto& [k, c] : t.terms()) {
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t r = 0; r < n; ++r) m[r][s] = triple.action()[k[s]][r][s];
        acc += c * det(a, m);
    }
    return acc;
}

inline Scalar theta(const TensorElement& t, const GoodTriple& triple) {
    if (t.n() != triple.module_rank())
        throw InputError("theta: tensor degree " + std::to_string(t.n()) + " differs from the module rank " +
                         std::to_string(triple.module_rank()));
    if (!is_invariant(t, PermGroup::symmetric(t.n()))) throw NotInvariant("theta needs an S_n-invariant tensor");
    return theta_any(t, triple);
}

// ---------------------------------------------------------------------------
// Base change

inline MultTableAlgebra base_change(const MultTableAlgebra& b, const RingHom& h, std::string name = "") {
    if (b.base() != h.source()) throw RingMismatch("base change: algebra is not over the source of the map");
    const std::size_t r = b.rank();
    std::vector<Scalar> table;
    table.reserve(r * r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) table.push_back(h(b.c(i, j, k)));
    std::vector<Scalar> unit;
    for (auto& u : b.unit_coords()) unit.push_back(h(u));
    return make_algebra(h.target(), b.labels(), table, unit, std::move(name), false);
}

inline Scalar base_change(const Scalar& x, const MultTableAlgebra& target, const RingHom& h) {
    Coords c;
    for (auto& v : x.coords()) c.push_back(h(v));
    return target.element(std::move(c));
}

inline GoodTriple base_change(const GoodTriple& triple, const MultTableAlgebra& target, const RingHom& h) {
    std::vector<ScalarMatrix> act;
    for (auto& m : triple.action()) {
        ScalarMatrix out = m;
        for (auto& row : out)
            for (auto& v : row) v = h(v);
        act.push_back(std::move(out));
    }
    return GoodTriple(target, triple.module_rank(), std::move(act));
}

inline TensorElement base_change(const TensorElement& t, const MultTableAlgebra& target, const RingHom& h) {
    TensorElement out(target, t.n());
    for (auto& [k, v] : t.terms()) out.add_term(k, h(v));
    return out;
}

// A fresh variable name for A -> A[x].
inline std::string fresh_variable(const BaseRing& a, std::string stem = "x") {
    while (a.has_variable(stem)) stem += "'";
    return stem;
}

inline Witness check_base_change(const GoodTriple& triple, const RingHom& h, std::size_t samples, Rng& rng) {
    Witness w{"basechange"};
    const MultTableAlgebra& b = triple.algebra();
    const std::size_t n = triple.module_rank();
    const MultTableAlgebra b2 = base_change(b, h);
    const GoodTriple tr2 = base_change(triple, b2, h);
    for (std::size_t s = 0; s < samples; ++s) {
        TensorElement t = random_invariant(b, n, rng);
        Scalar lhs = h(theta(t, triple));
        Scalar rhs = theta(base_change(t, b2, h), tr2);
        w.record(lhs == rhs, [&] {
            return nlohmann::json{{"tensor", tensor_json(t)}, {"mapped_theta", to_string(lhs)}, {"theta_mapped", to_string(rhs)}};
        });
    }

    // A -> A[x] and (x + b)^{(x)n}: theta is det(x + b) = sum_k chi_k(b) x^{n-k}.
    const std::string xname = fresh_variable(triple.base());
    const BaseRing ax = extend(triple.base(), xname);
    const RingHom hx = RingHom::canonical(triple.base(), ax);
    const MultTableAlgebra bx = base_change(b, hx);
    const GoodTriple trx = base_change(triple, bx, hx);
    const Scalar x = variable(ax, xname);
    std::vector<Scalar> elems;
    for (std::size_t i = 0; i < b.rank(); ++i) elems.push_back(b.basis(i));
    for (std::size_t s = 0; s < samples; ++s) elems.push_back(random_element(b, rng));
    for (auto& e : elems) {
        Coords xc;
        for (std::size_t i = 0; i < b.rank(); ++i) xc.push_back(x * bx.unit_coords()[i] + hx(e.coords()[i]));
        const Scalar xe = bx.element(std::move(xc));
        Scalar lhs = theta(pure_tensor(bx, std::vector<Scalar>(n, xe)), trx);
        CharPolynomial chi = char_coeffs(e, triple);
        Scalar via_chi = zero(ax), via_rho = zero(ax);
        for (std::size_t k = 0; k <= n; ++k) {
            via_chi += hx(chi[k]) * pow(x, n - k);
            via_rho += hx(theta(elem_sym(e, k, n), triple)) * pow(x, n - k);
        }
        w.record(lhs == via_chi && lhs == via_rho, [&] {
            return nlohmann::json{{"element", to_string(e)},
                                  {"theta_of_power", to_string(lhs)},
                                  {"char_poly", to_string(via_chi)},
                                  {"rho_expansion", to_string(via_rho)}};
        });
    }
    return w;
}

// ---------------------------------------------------------------------------
// Flags of submodules

// Inverse of a matrix with unit determinant, by Cayley-Hamilton.
inline ScalarMatrix matrix_inverse(const BaseRing& r, const ScalarMatrix& p) {
    const std::size_t n = p.size();
    std::vector<Scalar> c = charpoly(r, p);  // det(t - P) = sum c_k t^{n-k}
    const Scalar d = (n % 2 ? -c[n] : c[n]);
    if (!is_unit(d)) throw InputError("matrix is not invertible: determinant " + to_string(d));
    // P^{-1} = -(1/c_n) (P^{n-1} + c_1 P^{n-2} + ... + c_{n-1})
    ScalarMatrix acc = identity_matrix(r, n);
    for (std::size_t k = 1; k < n; ++k) {
        acc = matmul(r, acc, p);
        for (std::size_t i = 0; i < n; ++i) acc[i][i] += c[k];
    }
    const Scalar f = -inverse(c[n]);
    for (auto& row : acc)
        for (auto& v : row) v *= f;
    return acc;
}

// M_1 in M_2 in ... in M_m = M, given by an adapted basis: M_i is spanned by
// the first dims[i] basis columns.  Equal consecutive dims are allowed.
class ModuleFlag {
public:
    ModuleFlag(GoodTriple triple, ScalarMatrix basis, std::vector<std::size_t> dims)
        : triple_(std::move(triple)), basis_(std::move(basis)), dims_(std::move(dims)) {
        const std::size_t n = triple_.module_rank();
        const BaseRing& a = triple_.base();
        if (basis_.size() != n) throw InputError("flag basis must be a square matrix of the module rank");
        for (auto& row : basis_) {
            if (row.size() != n) throw InputError("flag basis must be a square matrix of the module rank");
            for (auto& v : row) v = embed(v, a);
        }
        if (dims_.empty() || dims_.back() != n) throw InputError("flag must end with the whole module");
        for (std::size_t i = 1; i < dims_.size(); ++i)
            if (dims_[i] < dims_[i - 1]) throw InputError("flag dimensions must ascend");
        const ScalarMatrix inv = matrix_inverse(a, basis_);
        std::vector<std::size_t> block(n);
        for (std::size_t i = 0, lo = 0; i < dims_.size(); lo = dims_[i], ++i)
            for (std::size_t r = lo; r < dims_[i]; ++r) block[r] = i;
        for (std::size_t e = 0; e < triple_.algebra().rank(); ++e) {
            ScalarMatrix y = matmul(a, inv, matmul(a, triple_.action()[e], basis_));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    if (block[r] > block[c] && !y[r][c].is_zero())
                        throw InputError("flag is not stable under " + triple_.algebra().labels()[e]);
            adapted_.push_back(std::move(y));
        }
    }

    // Adapted basis over a field from an ascending chain of spanning sets.
    static ModuleFlag from_chain(GoodTriple triple, const std::vector<std::vector<Vec>>& chain) {
        const BaseRing& k = triple.base();
        const std::size_t n = triple.module_rank();
        if (!k.is_field()) throw InputError("from_chain needs a field base; give an adapted basis instead");
        RowSpace span(k, n);
        std::vector<Vec> cols;
        std::vector<std::size_t> dims;
        for (auto& level : chain) {
            RowSpace here(k, n);
            for (auto& v : level) here.insert(v);
            for (auto& v : cols)
                if (!here.contains(v)) throw InputError("flag levels are not nested");
            for (auto& v : level)
                if (span.insert(v)) cols.push_back(v);
            dims.push_back(cols.size());
        }
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, zero(k));
            e[i] = one(k);
            if (span.insert(e)) cols.push_back(e);
        }
        if (dims.empty() || dims.back() != n) dims.push_back(n);
        ScalarMatrix p = zero_matrix(k, n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) p[r][c] = cols[c][r];
        return ModuleFlag(std::move(triple), std::move(p), std::move(dims));
    }

    const GoodTriple& triple() const { return triple_; }
    const ScalarMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& dims() const { return dims_; }

    std::vector<std::size_t> quotient_ranks() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0, lo = 0; i < dims_.size(); lo = dims_[i], ++i) out.push_back(dims_[i] - lo);
        return out;
    }

    // Triples M_i / M_{i-1}, smallest first.
    std::vector<GoodTriple> quotients() const {
        std::vector<GoodTriple> out;
        for (std::size_t i = 0, lo = 0; i < dims_.size(); lo = dims_[i], ++i) {
            const std::size_t hi = dims_[i];
            std::vector<ScalarMatrix> act;
            for (auto& y : adapted_) {
                ScalarMatrix q = zero_matrix(triple_.base(), hi - lo, hi - lo);
                for (std::size_t r = lo; r < hi; ++r)
                    for (std::size_t c = lo; c < hi; ++c) q[r - lo][c - lo] = y[r][c];
                act.push_back(std::move(q));
            }
            out.emplace_back(triple_.algebra(), hi - lo, std::move(act));
        }
        return out;
    }

private:
    GoodTriple triple_;
    ScalarMatrix basis_;
    std::vector<std::size_t> dims_;
    std::vector<ScalarMatrix> adapted_;
};

// theta over the pieces of sigma(t), multiplied together.
inline Scalar theta_through_sigma(const TensorElement& t, const std::vector<std::size_t>& parts,
                                  const std::vector<std::function<Scalar(const TensorElement&)>>& pieces,
                                  const BaseRing& a) {
    SplitTensor u = sigma_map(t, parts);
    Scalar acc = zero(a);
    for (auto& [blocks, v] : u.terms) {
        Scalar prod = v;
        for (std::size_t i = 0; i < blocks.size() && !prod.is_zero(); ++i)
            prod *= pieces[i](orbit_sum(t.algebra(), blocks[i]));
        acc += prod;
    }
    return acc;
}

inline Witness check_ses(const ModuleFlag& flag, std::size_t samples, Rng& rng) {
    Witness w{"ses"};
    const GoodTriple& triple = flag.triple();
    const MultTableAlgebra& b = triple.algebra();
    const std::size_t n = triple.module_rank();
    const std::vector<GoodTriple> qs = flag.quotients();
    std::vector<std::function<Scalar(const TensorElement&)>> pieces;
    for (auto& q : qs) pieces.push_back([&q](const TensorElement& x) { return theta_any(x, q); });
    const std::vector<std::size_t> parts = flag.quotient_ranks();

    std::vector<TensorElement> inputs;
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t k = 0; k <= n; ++k) inputs.push_back(elem_sym(b.basis(i), k, n));
    for (std::size_t s = 0; s < samples; ++s) inputs.push_back(random_invariant(b, n, rng));
    for (auto& t : inputs) {
        Scalar lhs = theta(t, triple);
        Scalar rhs = theta_through_sigma(t, parts, pieces, triple.base());
        w.record(lhs == rhs, [&] {
            return nlohmann::json{{"tensor", tensor_json(t)}, {"theta", to_string(lhs)}, {"through_sigma", to_string(rhs)}};
        });
    }
    for (std::size_t i = 0; i < b.rank(); ++i) {
        Scalar d = char_coeffs(b.basis(i), triple).det();
        Scalar prod = one(triple.base());
        for (auto& q : qs) prod *= char_coeffs(b.basis(i), q).det();
        w.record(d == prod, [&] {
            return nlohmann::json{{"element", b.labels()[i]}, {"det", to_string(d)}, {"product_of_dets", to_string(prod)}};
        });
    }
    return w;
}

// ---------------------------------------------------------------------------
// Towers A -> B -> C

inline Witness check_tower(const MultTableAlgebra& b, const MultTableAlgebra& c, std::size_t samples, Rng& rng) {
    Witness w{"tower"};
    const MultTableAlgebra ca = tower_compose(b, c);
    const std::size_t m = b.rank(), n = c.rank();
    const GoodTriple tb = regular_triple(b), tc = regular_triple(c), tca = regular_triple(ca);
    const SymPower sp = sym_power_algebra(ca, n);

    // S_n(C|A) -> S_n(C|B) -> B on the orbit-sum basis.
    std::vector<Scalar> phi;
    for (auto& rep : sp.reps) {
        TensorElement over_b(c, n);
        for (auto& g : symmetric_orbit(rep)) {
            std::vector<Scalar> f;
            for (auto idx : g) {
                Coords cc(n, zero(b.ring()));
                cc[idx / m] = b.basis(idx % m);
                f.push_back(c.element(std::move(cc)));
            }
            over_b = over_b + pure_tensor(c, f);
        }
        phi.push_back(theta(over_b, tc));
    }

    std::vector<TensorElement> inputs;
    std::vector<Scalar> elems;
    for (std::size_t s = 0; s < samples; ++s) {
        elems.push_back(random_element(c, rng));
        inputs.push_back(random_invariant(ca, m * n, rng));
    }
    for (std::size_t k = 0; k <= m * n && !elems.empty(); ++k) inputs.push_back(elem_sym(restrict_scalars(elems[0], ca), k, m * n));
    for (auto& t : inputs) {
        Scalar lhs = theta(t, tca);
        Scalar rhs = theta_any(tensor_power_map(tau_map(t, m, n, sp), b, phi), tb);
        w.record(lhs == rhs, [&] {
            return nlohmann::json{{"tensor", tensor_json(t)}, {"theta", to_string(lhs)}, {"through_tau", to_string(rhs)}};
        });
    }
    for (auto& x : elems) {
        Scalar direct = det(b.base(), mult_matrix(restrict_scalars(x, ca)));
        Scalar nested = det(b.base(), mult_matrix(det(b.ring(), mult_matrix(x))));
        w.record(direct == nested, [&] {
            return nlohmann::json{{"element", to_string(x)}, {"det_C_over_A", to_string(direct)}, {"nested", to_string(nested)}};
        });
    }
    return w;
}

// ---------------------------------------------------------------------------
// Tensor products B (x)_R B~ over A (x)_R A~

inline Witness check_tensor(const MultTableAlgebra& b, const MultTableAlgebra& bt, const BaseRing& r, std::size_t samples,
                            Rng& rng) {
    Witness w{"tensor"};
    const TensorAlgebra ta = tensor_algebra(b, bt, r);
    const MultTableAlgebra& d = ta.algebra;
    const BaseRing& ad = d.base();
    const std::size_t n = b.rank(), nt = bt.rank(), N = n * nt;
    const GoodTriple tb = regular_triple(b), tbt = regular_triple(bt), td = regular_triple(d);

    // (theta_B (x) theta_B~) o rho: row products into B, column products into B~,
    // slot (i, j) of the n x n~ grid at index i + n * j.
    auto through_rho = [&](const TensorElement& t) {
        Scalar acc = zero(ad);
        std::vector<Scalar> rows(n), cols(nt);
        for (auto& [k, v] : t.terms()) {
            for (std::size_t i = 0; i < n; ++i) rows[i] = b.unit();
            for (std::size_t j = 0; j < nt; ++j) cols[j] = bt.unit();
            for (std::size_t j = 0; j < nt; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    const std::uint32_t q = k[i + n * j];
                    rows[i] *= b.basis(q % n);
                    cols[j] *= bt.basis(q / n);
                }
            acc += v * ta.bases.from_left(theta_pure(rows, tb)) * ta.bases.from_right(theta_pure(cols, tbt));
        }
        return acc;
    };

    std::vector<std::pair<Scalar, Scalar>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nt; ++j) pairs.emplace_back(b.basis(i), bt.basis(j));
    for (std::size_t s = 0; s < samples; ++s) pairs.emplace_back(random_element(b, rng), random_element(bt, rng));

    std::vector<TensorElement> inputs;
    for (std::size_t s = 0; s < samples; ++s) inputs.push_back(random_invariant(d, N, rng));
    for (std::size_t p = 0; p < pairs.size() && p < 3; ++p)
        for (std::size_t k = 0; k <= N; ++k) inputs.push_back(elem_sym(ta.pure(pairs[p].first, pairs[p].second), k, N));
    for (auto& t : inputs) {
        Scalar lhs = theta(t, td);
        Scalar rhs = through_rho(t);
        w.record(lhs == rhs, [&] {
            return nlohmann::json{{"tensor", tensor_json(t)}, {"theta", to_string(lhs)}, {"through_rho", to_string(rhs)}};
        });
    }

    // det(x + b (x) b~) = sum_k w_k(chi(b), chi(b~)) x^{N-k}
    if (N <= wk_cap_default()) {
        const std::vector<SymPolyExpr> wk = compute_wk(n, nt);
        for (auto& [x, y] : pairs) {
            const CharPolynomial cx = char_coeffs(x, tb), cy = char_coeffs(y, tbt);
            const CharPolynomial cd = char_coeffs(ta.pure(x, y), td);
            std::map<std::string, Scalar> images;
            for (std::size_t i = 1; i <= n; ++i) images["u" + std::to_string(i)] = ta.bases.from_left(cx[i]);
            for (std::size_t j = 1; j <= nt; ++j) images["v" + std::to_string(j)] = ta.bases.from_right(cy[j]);
            const RingHom ev(wk[0].expr.ring(), ad, images);
            for (std::size_t k = 0; k <= N; ++k) {
                Scalar lhs = cd[k], rhs = ev(wk[k].expr);
                w.record(lhs == rhs, [&] {
                    return nlohmann::json{{"b", to_string(x)}, {"b~", to_string(y)}, {"k", k},
                                          {"chi_k", to_string(lhs)}, {"w_k", to_string(rhs)}};
                });
            }
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Local algebras over a field

struct LocalData {
    ModuleFlag flag;          // of A over itself, quotients of rank n over k
    MultTableAlgebra residue; // K over k
    std::vector<Scalar> pi;   // images of the basis of A in K
};

inline Witness check_local_factorization(const LocalData& loc, std::size_t samples, Rng& rng) {
    Witness w{"local"};
    const GoodTriple& ta = loc.flag.triple();
    const MultTableAlgebra& a = ta.algebra();
    const MultTableAlgebra& kk = loc.residue;
    const BaseRing& k = a.base();
    if (!k.is_field()) throw InputError("local factorization needs an algebra over a field");
    if (kk.base() != k) throw RingMismatch("residue field is over a different base");
    if (ta.module_rank() != a.rank()) throw InputError("local factorization needs A acting on itself");
    if (loc.pi.size() != a.rank()) throw InputError("one residue image per basis element required");
    for (auto& p : loc.pi)
        if (p.ring() != kk.ring()) throw RingMismatch("residue image outside the residue field");

    auto pi_of = [&](const Scalar& x) {
        Scalar acc = zero(kk.ring());
        for (std::size_t i = 0; i < a.rank(); ++i) acc += embed(x.coords()[i], kk.ring()) * loc.pi[i];
        return acc;
    };
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j)
            if (pi_of(a.basis(i) * a.basis(j)) != loc.pi[i] * loc.pi[j]) throw InputError("pi is not multiplicative");
    if (pi_of(a.unit()) != kk.unit()) throw InputError("pi does not preserve the unit");

    const std::size_t d = a.rank(), n = kk.rank();
    const std::vector<std::size_t> parts = loc.flag.quotient_ranks();
    for (auto p : parts)
        if (p != n) throw InputError("flag quotient of rank " + std::to_string(p) + " is not one-dimensional over the residue field");
    const std::size_t m = parts.size();
    w.record(d == m * n, [&] { return nlohmann::json{{"d", d}, {"m", m}, {"n", n}}; });

    // The maximal ideal (kernel of pi) must kill every quotient.
    std::vector<Vec> pi_rows(kk.rank(), Vec(d, zero(k)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t r = 0; r < kk.rank(); ++r) pi_rows[r][i] = loc.pi[i].coords()[r];
    const std::vector<Vec> ker = kernel_basis(k, pi_rows, d);
    const std::vector<GoodTriple> qs = loc.flag.quotients();
    for (auto& v : ker) {
        Scalar x = a.element(v);
        for (auto& q : qs)
            for (auto& row : mult_matrix(x, q))
                for (auto& e : row)
                    if (!e.is_zero()) throw InputError("flag quotient is not a residue-field vector space");
    }

    const GoodTriple tk = regular_triple(kk);
    std::vector<std::function<Scalar(const TensorElement&)>> pieces(
        m, [&](const TensorElement& x) { return theta_any(tensor_power_map(x, kk, loc.pi), tk); });
    std::vector<TensorElement> inputs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= d; ++j) inputs.push_back(elem_sym(a.basis(i), j, d));
    for (std::size_t s = 0; s < samples; ++s) inputs.push_back(random_invariant(a, d, rng));
    for (auto& t : inputs) {
        Scalar lhs = theta(t, ta);
        Scalar rhs = theta_through_sigma(t, parts, pieces, k);
        w.record(lhs == rhs, [&] {
            return nlohmann::json{{"tensor", tensor_json(t)}, {"theta", to_string(lhs)}, {"through_residue", to_string(rhs)}};
        });
    }
    return w;
}

}  // namespace symalg
