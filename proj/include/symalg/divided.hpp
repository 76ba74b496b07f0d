#pragma once
/// \file divided.hpp
/// Divided powers Gamma_d(M|A) of a free module with a fixed basis.
///
/// Basis of Gamma_d: multisets delta of size d over the basis labels, standing
/// for gamma_{delta_1}(e_1) * ... * gamma_{delta_r}(e_r).  Structural maps out of
/// Gamma_d are obtained from polynomial laws by evaluating the law at the
/// generic element sum t_i e_i over A[t_1..t_r]: the image of delta is the
/// coefficient of t^delta.

#include "norm.hpp"

#include <map>
#include <string>
#include <vector>

namespace symalg {

using Exponents = std::vector<std::uint32_t>;  // count per basis label

inline std::size_t multiset_size(const Exponents& m) {
    std::size_t s = 0;
    for (auto x : m) s += x;
    return s;
}

inline Tuple multiset_tuple(const Exponents& m) {
    Tuple t;
    for (std::size_t i = 0; i < m.size(); ++i) t.insert(t.end(), m[i], static_cast<std::uint32_t>(i));
    return t;
}

inline Exponents tuple_multiset(const Tuple& t, std::size_t r) {
    Exponents m(r, 0);
    for (auto i : t) ++m.at(i);
    return m;
}

// All multisets of size d over r labels, in the order of sorted_tuples(r, d).
inline std::vector<Exponents> multisets(std::size_t r, std::size_t d) {
    std::vector<Exponents> out;
    for (auto& t : sorted_tuples(r, d)) out.push_back(tuple_multiset(t, r));
    return out;
}

class DividedElement {
public:
    DividedElement(BaseRing base, std::vector<std::string> labels, std::size_t degree)
        : base_(std::move(base)), labels_(std::move(labels)), d_(degree) {}

    const BaseRing& base() const { return base_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t rank() const { return labels_.size(); }
    std::size_t degree() const { return d_; }
    const std::map<Exponents, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coeff(const Exponents& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero(base_) : it->second;
    }

    void add_term(const Exponents& m, const Scalar& c) {
        if (m.size() != rank() || multiset_size(m) != d_) throw InputError("multiset does not match the module and degree");
        Scalar v = embed(c, base_);
        if (v.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, v);
        } else {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool same_module(const DividedElement& o) const { return base_ == o.base_ && labels_ == o.labels_; }

    bool operator==(const DividedElement& o) const {
        if (!same_module(o) || d_ != o.d_ || terms_.size() != o.terms_.size()) return false;
        for (auto a = terms_.begin(), b = o.terms_.begin(); a != terms_.end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
        return true;
    }
    bool operator!=(const DividedElement& o) const { return !(*this == o); }

private:
    BaseRing base_;
    std::vector<std::string> labels_;
    std::size_t d_;
    std::map<Exponents, Scalar> terms_;
};

inline void require_same_module(const DividedElement& u, const DividedElement& v, const char* op) {
    if (!u.same_module(v)) throw RingMismatch(std::string(op) + ": elements of different modules");
}

inline DividedElement operator+(const DividedElement& u, const DividedElement& v) {
    require_same_module(u, v, "+");
    if (u.degree() != v.degree()) throw InputError("adding divided powers of different degree");
    DividedElement out = u;
    for (auto& [m, c] : v.terms()) out.add_term(m, c);
    return out;
}

inline DividedElement operator*(const Scalar& a, const DividedElement& u) {
    DividedElement out(u.base(), u.labels(), u.degree());
    const Scalar s = embed(a, u.base());
    for (auto& [m, c] : u.terms()) out.add_term(m, s * c);
    return out;
}

inline DividedElement divided_unit(const BaseRing& base, const std::vector<std::string>& labels) {
    DividedElement out(base, labels, 0);
    out.add_term(Exponents(labels.size(), 0), one(base));
    return out;
}

// gamma_d(sum a_i e_i) = sum_{|delta| = d} prod a_i^{delta_i} delta
inline DividedElement gamma_of(const BaseRing& base, const std::vector<std::string>& labels, const Coords& m, std::size_t d) {
    if (m.size() != labels.size()) throw InputError("gamma_of: coordinate vector has the wrong length");
    DividedElement out(base, labels, d);
    Coords a;
    for (auto& x : m) a.push_back(embed(x, base));
    for (auto& delta : multisets(labels.size(), d)) {
        Scalar c = one(base);
        for (std::size_t i = 0; i < delta.size() && !c.is_zero(); ++i)
            if (delta[i]) c *= pow(a[i], delta[i]);
        out.add_term(delta, c);
    }
    return out;
}

inline DividedElement star_mul(const DividedElement& u, const DividedElement& v) {
    require_same_module(u, v, "star_mul");
    DividedElement out(u.base(), u.labels(), u.degree() + v.degree());
    Exponents sum(u.rank());
    for (auto& [a, ca] : u.terms())
        for (auto& [b, cb] : v.terms()) {
            Integer mult = 1;
            for (std::size_t i = 0; i < sum.size(); ++i) {
                sum[i] = a[i] + b[i];
                mult *= binomial(sum[i], a[i]);
            }
            out.add_term(sum, ca * cb * from_int(u.base(), mult));
        }
    return out;
}

// The split algebra A x ... x A on the same labels; carries the module when
// no algebra structure is given.
inline MultTableAlgebra split_algebra(const BaseRing& base, const std::vector<std::string>& labels) {
    const std::size_t r = labels.size();
    std::vector<Scalar> table(r * r * r, zero(base)), unit(r, one(base));
    for (std::size_t i = 0; i < r; ++i) table[(i * r + i) * r + i] = one(base);
    return make_algebra(base, labels, table, unit, "", false);
}

// Gamma_n(M) -> S_n(M): delta |-> orbit sum of the sorted tuple of delta.
inline TensorElement gamma_compare_tensor(const DividedElement& u, const MultTableAlgebra& alg) {
    if (alg.base() != u.base() || alg.labels() != u.labels())
        throw RingMismatch("gamma_compare: algebra does not carry the module of the divided power");
    TensorElement out(alg, u.degree());
    for (auto& [m, c] : u.terms()) out = out + c * orbit_sum(alg, multiset_tuple(m));
    return out;
}

inline SymTensor gamma_compare(const DividedElement& u, const MultTableAlgebra& alg) {
    return SymTensor(gamma_compare_tensor(u, alg));
}

inline SymTensor gamma_compare(const DividedElement& u) {
    return gamma_compare(u, split_algebra(u.base(), u.labels()));
}

inline DividedElement gamma_compare_inverse(const TensorElement& t) {
    if (!is_invariant(t, PermGroup::symmetric(t.n()))) throw NotInvariant("gamma_compare_inverse needs an invariant tensor");
    const MultTableAlgebra& alg = t.algebra();
    DividedElement out(alg.base(), alg.labels(), t.n());
    for (auto& [rep, c] : orbit_coords(t)) out.add_term(tuple_multiset(rep, alg.rank()), c);
    return out;
}

inline Scalar theta_div(const DividedElement& u, const GoodTriple& triple) {
    if (u.degree() != triple.module_rank())
        throw InputError("theta_div: degree " + std::to_string(u.degree()) + " differs from the module rank " +
                         std::to_string(triple.module_rank()));
    return theta_any(gamma_compare_tensor(u, triple.algebra()), triple);
}

// Product on Gamma_d(B|A) transported from S_d(B|A).
inline DividedElement transported_mul(const DividedElement& u, const DividedElement& v, const MultTableAlgebra& alg) {
    return gamma_compare_inverse(tensor_mul(gamma_compare_tensor(u, alg), gamma_compare_tensor(v, alg)));
}

// ---------------------------------------------------------------------------
// Linear maps out of Gamma_d from polynomial laws

// A[t_1..t_r] and the generic element sum t_i e_i.
struct GenericPoint {
    BaseRing ring;
    Coords coords;
    std::vector<std::string> names;
};

inline GenericPoint generic_point(const BaseRing& base, std::size_t r, const std::string& stem = "t") {
    std::string s = stem;
    auto clash = [&] {
        for (std::size_t i = 1; i <= r; ++i)
            if (base.has_variable(s + std::to_string(i))) return true;
        return false;
    };
    while (clash()) s += "'";
    std::vector<std::string> names = numbered(s, r);
    BaseRing ring = BaseRing::poly(base, names);
    Coords c;
    for (auto& n : names) c.push_back(variable(ring, n));
    return {ring, c, names};
}

// Coefficient of t^delta in a polynomial over A[t_1..t_r], as an element of A.
inline Scalar generic_coeff(const Scalar& p, const Exponents& delta, const BaseRing& base) {
    for (auto& term : p.terms())
        if (Exponents(term.exps.begin(), term.exps.end()) == delta) return embed(term.coeff, base);
    return zero(base);
}

// Gamma_{m+n}(M) -> Gamma_m(M) (x) Gamma_n(M) from the law x |-> gamma_m(x) (x) gamma_n(x);
// result keyed by (delta', delta'').
inline std::map<std::pair<Exponents, Exponents>, Scalar> sigma_div(const DividedElement& u, std::size_t m) {
    if (m > u.degree()) throw InputError("sigma_div: first part exceeds the degree");
    const std::size_t n = u.degree() - m, r = u.rank();
    const GenericPoint g = generic_point(u.base(), r);
    const DividedElement gm = gamma_of(g.ring, u.labels(), g.coords, m), gn = gamma_of(g.ring, u.labels(), g.coords, n);
    std::map<std::pair<Exponents, Exponents>, Scalar> out;
    for (auto& [delta, c] : u.terms())
        for (auto& [a, ca] : gm.terms())
            for (auto& [b, cb] : gn.terms()) {
                Scalar v = generic_coeff(ca * cb, delta, u.base());
                if (v.is_zero()) continue;
                auto key = std::make_pair(a, b);
                auto it = out.find(key);
                if (it == out.end())
                    out.emplace(key, c * v);
                else
                    it->second += c * v;
            }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Gamma_{mn}(M) -> Gamma_m(Gamma_n(M)) from the law x |-> gamma_m(gamma_n(x)).  The
// labels of Gamma_n(M) follow sorted_tuples(r, n), matching sym_power_algebra.
inline DividedElement tau_div(const DividedElement& u, std::size_t m, std::size_t n, const std::vector<std::string>& inner_labels) {
    if (u.degree() != m * n) throw InputError("tau_div: degree is not m*n");
    const std::size_t r = u.rank();
    const GenericPoint g = generic_point(u.base(), r);
    const DividedElement gn = gamma_of(g.ring, u.labels(), g.coords, n);
    const std::vector<Exponents> inner = multisets(r, n);
    if (inner_labels.size() != inner.size()) throw InputError("tau_div: wrong number of inner labels");
    Coords y;
    for (auto& d : inner) y.push_back(gn.coeff(d));
    const DividedElement gm = gamma_of(g.ring, inner_labels, y, m);
    DividedElement out(u.base(), inner_labels, m);
    for (auto& [delta, c] : u.terms())
        for (auto& [a, ca] : gm.terms()) out.add_term(a, c * generic_coeff(ca, delta, u.base()));
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial-law checks

// identity, A -> A[t_1..t_r], and A -> GF(p) when A is ZZ or a polynomial ring over ZZ.
inline std::vector<RingHom> default_hom_family(const BaseRing& a, std::size_t r, const Integer& p = 5) {
    std::vector<RingHom> out{RingHom::canonical(a, a)};
    out.push_back(RingHom::canonical(a, generic_point(a, r).ring));
    if (a.kind() == RingKind::Integers) out.emplace_back(a, BaseRing::prime_field(p), std::map<std::string, Scalar>{});
    if (a.kind() == RingKind::Poly && a.coefficients().kind() == RingKind::Integers)
        out.push_back(RingHom::canonical(a, BaseRing::poly(BaseRing::prime_field(p), a.variables())));
    return out;
}

enum class LawKind { TensorPower, Determinant };

// A sample scalar of the target: a variable plus a constant when there is one.
inline Scalar law_scalar(const BaseRing& a, Rng& rng) {
    Scalar c = random_scalar(a, rng);
    if (a.kind() == RingKind::Poly && !a.variables().empty()) c += variable(a, a.variables()[rng.below(a.variables().size())]);
    return c;
}

inline Witness law_check(LawKind kind, const GoodTriple& triple, std::size_t n, const std::vector<RingHom>& homs,
                         std::size_t samples, Rng& rng) {
    Witness w{kind == LawKind::Determinant ? "law/determinant" : "law/tensor_power"};
    const MultTableAlgebra& b = triple.algebra();
    if (kind == LawKind::Determinant) n = triple.module_rank();
    for (auto& h : homs) {
        const MultTableAlgebra b2 = base_change(b, h);
        const GoodTriple tr2 = base_change(triple, b2, h);
        const BaseRing& a2 = b2.base();
        auto det_of = [&](const Scalar& x) { return det(a2, mult_matrix(x, tr2)); };
        auto pow_of = [&](const Scalar& x) { return pure_tensor(b2, std::vector<Scalar>(n, x)); };

        std::vector<Scalar> xs;
        if (a2.kind() == RingKind::Poly && a2.variables().size() >= b.rank()) {
            Coords c;
            for (std::size_t i = 0; i < b.rank(); ++i) c.push_back(variable(a2, a2.variables()[a2.variables().size() - b.rank() + i]));
            xs.push_back(b2.element(std::move(c)));
        }
        for (std::size_t s = 0; s < samples; ++s) xs.push_back(base_change(random_element(b, rng), b2, h));

        auto ctx = [&](const char* prop, const Scalar& x) {
            return nlohmann::json{{"map", h.source().describe() + " -> " + a2.describe()}, {"property", prop}, {"x", to_string(x)}};
        };
        if (kind == LawKind::Determinant) {
            w.record(det_of(b2.unit()).is_one(), [&] { return ctx("F(1) = 1", b2.unit()); });
        } else {
            w.record(pow_of(b2.unit()) == unit_tensor(b2, n), [&] { return ctx("F(1) = 1", b2.unit()); });
        }
        for (std::size_t s = 0; s < xs.size(); ++s) {
            const Scalar& x = xs[s];
            const Scalar y = xs[(s + 1) % xs.size()];
            const Scalar a = law_scalar(a2, rng);
            const Scalar ax = b2.element([&] {
                Coords c;
                for (auto& v : x.coords()) c.push_back(a * v);
                return c;
            }());
            if (kind == LawKind::Determinant) {
                w.record(det_of(ax) == pow(a, n) * det_of(x), [&] { return ctx("F(ax) = a^n F(x)", x); });
                w.record(det_of(x * y) == det_of(x) * det_of(y), [&] { return ctx("F(xy) = F(x) F(y)", x); });
                w.record(theta_div(gamma_of(a2, b2.labels(), x.coords(), n), tr2) == det_of(x),
                         [&] { return ctx("theta(gamma_n(x)) = F(x)", x); });
            } else {
                w.record(pow_of(ax) == pow(a, n) * pow_of(x), [&] { return ctx("F(ax) = a^n F(x)", x); });
                w.record(pow_of(x * y) == tensor_mul(pow_of(x), pow_of(y)), [&] { return ctx("F(xy) = F(x) F(y)", x); });
                w.record(gamma_compare_tensor(gamma_of(a2, b2.labels(), x.coords(), n), b2) == pow_of(x),
                         [&] { return ctx("gamma(gamma_n(x)) = F(x)", x); });
            }
        }
        // naturality on elements coming from A
        for (std::size_t s = 0; s < samples; ++s) {
            const Scalar x = random_element(b, rng);
            const Scalar hx = base_change(x, b2, h);
            if (kind == LawKind::Determinant) {
                w.record(h(det(triple.base(), mult_matrix(x, triple))) == det_of(hx), [&] { return ctx("F(h x) = h F(x)", x); });
            } else {
                w.record(base_change(pure_tensor(b, std::vector<Scalar>(n, x)), b2, h) == pow_of(hx),
                         [&] { return ctx("F(h x) = h F(x)", x); });
            }
        }
    }
    return w;
}

}  // namespace symalg
