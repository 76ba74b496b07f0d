#pragma once
/// \file rings.hpp
/// Exact coefficient rings: ZZ, QQ, GF(p), polynomial rings over any of
/// these, and finite free extensions given by a multiplication table.
/// Polynomials are sparse, ordered graded-lexicographically (first variable
/// most significant), leading term first.

#include "integer.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace symalg {

enum class RingKind { Integers, Rationals, PrimeField, Poly, Extension };

struct RingData;
struct ExtensionTable;
class Scalar;

class BaseRing {
public:
    BaseRing();  // ZZ

    static BaseRing integers();
    static BaseRing rationals();
    static BaseRing prime_field(const Integer& p);
    static BaseRing poly(const BaseRing& coefficients, std::vector<std::string> variables);
    static BaseRing extension(std::shared_ptr<const ExtensionTable> table);

    RingKind kind() const;
    const Integer& modulus() const;                   // PrimeField only
    const BaseRing& coefficients() const;             // Poly only
    const std::vector<std::string>& variables() const;  // Poly only
    const ExtensionTable& table() const;              // Extension only
    std::size_t nvars() const { return variables().size(); }

    // 0 for rings containing QQ or ZZ, p otherwise.
    Integer characteristic() const;
    // The innermost ring of a Poly/Extension tower.
    BaseRing prime_ring() const;
    bool is_field() const;
    bool has_variable(const std::string& name) const;

    std::string describe() const;
    bool operator==(const BaseRing& o) const;
    bool operator!=(const BaseRing& o) const { return !(*this == o); }
    const RingData* id() const { return d_.get(); }

private:
    explicit BaseRing(std::shared_ptr<const RingData> d) : d_(std::move(d)) {}
    std::shared_ptr<const RingData> d_;
};

using Monomial = std::vector<std::uint32_t>;

// Graded lexicographic: true when a > b.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    unsigned long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    return a > b;
}

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_greater(a, b); }
};

struct Term;
using TermList = std::vector<Term>;
using Coords = std::vector<Scalar>;

class Scalar {
public:
    Scalar() : v_(Integer(0)) {}

    const BaseRing& ring() const { return ring_; }
    RingKind kind() const { return ring_.kind(); }

    // ZZ value or GF(p) residue in [0, p).
    const Integer& integer() const;
    const Rational& rational() const;
    const TermList& terms() const;   // Poly
    const Coords& coords() const;    // Extension

    bool is_zero() const;
    bool is_one() const;

    static Scalar from_integer_unchecked(BaseRing r, Integer v);
    static Scalar from_rational_unchecked(BaseRing r, Rational v);
    static Scalar from_terms_unchecked(BaseRing r, TermList t);
    static Scalar from_coords_unchecked(BaseRing r, Coords c);

private:
    BaseRing ring_;
    std::variant<Integer, Rational, std::shared_ptr<const TermList>, std::shared_ptr<const Coords>> v_;
};

struct Term {
    Monomial exps;
    Scalar coeff;
};

struct ExtensionTable {
    BaseRing base;
    std::size_t rank = 0;
    std::vector<std::string> labels;
    std::vector<Scalar> table;  // c_{ij}^k at (i*rank + j)*rank + k
    std::vector<Scalar> unit;
    std::string name;

    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return table[(i * rank + j) * rank + k];
    }
};

struct RingData {
    RingKind kind = RingKind::Integers;
    Integer p;
    std::optional<BaseRing> coeffs;
    std::vector<std::string> vars;
    std::shared_ptr<const ExtensionTable> ext;
    RingData() = default;
};

// ---- construction -------------------------------------------------------

inline Scalar zero(const BaseRing& r);
inline Scalar one(const BaseRing& r);
inline Scalar from_int(const BaseRing& r, const Integer& n);
inline Scalar from_rational(const BaseRing& r, const Rational& q);
inline Scalar variable(const BaseRing& r, const std::string& name);
inline Scalar make_poly(const BaseRing& r, std::map<Monomial, Scalar, GrlexGreater> terms);
inline Scalar make_ext(const BaseRing& r, Coords coords);
inline Scalar monomial(const BaseRing& r, const Monomial& m, const Scalar& c);

// ---- arithmetic -----------------------------------------------------------

inline Scalar operator+(const Scalar& a, const Scalar& b);
inline Scalar operator-(const Scalar& a, const Scalar& b);
inline Scalar operator-(const Scalar& a);
inline Scalar operator*(const Scalar& a, const Scalar& b);
inline bool operator==(const Scalar& a, const Scalar& b);
inline bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
inline Scalar& operator+=(Scalar& a, const Scalar& b) { return a = a + b; }
inline Scalar& operator-=(Scalar& a, const Scalar& b) { return a = a - b; }
inline Scalar& operator*=(Scalar& a, const Scalar& b) { return a = a * b; }
inline Scalar pow(const Scalar& a, unsigned long e);
inline bool is_unit(const Scalar& a);
inline Scalar inverse(const Scalar& a);
inline Scalar scale(const Scalar& a, const Integer& n) { return a * from_int(a.ring(), n); }
inline std::string to_string(const Scalar& a);

// ---- polynomial helpers -------------------------------------------------

// R[name]: appends one distinguished variable to a Poly ring, or wraps R.
inline BaseRing extend(const BaseRing& r, const std::string& name);
// For p in R[t] (t = last variable), the coefficient of t^k in R.
inline Scalar poly_coeff(const Scalar& p, unsigned k);
// All coefficients of p in R[t], index = power of t.
inline std::vector<Scalar> poly_coeffs(const Scalar& p);
// Sum c_k t^k in R[t].
inline Scalar from_coeffs(const BaseRing& rt, const std::vector<Scalar>& c);
inline unsigned total_degree(const Scalar& p);

// Canonical map into `target` when one exists (identity, ZZ -> anything,
// QQ -> QQ-algebras, GF(p) -> char p rings, polynomial variables by name).
inline std::optional<Scalar> try_embed(const Scalar& x, const BaseRing& target);
inline Scalar embed(const Scalar& x, const BaseRing& target);

// ---- characteristic polynomial ------------------------------------------

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Division-free (Samuelson-Berkowitz): c with det(xI - A) = sum c_k x^{n-k}.
inline std::vector<Scalar> charpoly(const BaseRing& r, const ScalarMatrix& a);
inline Scalar det(const BaseRing& r, const ScalarMatrix& a);

// ===========================================================================
// implementation
// ===========================================================================

namespace detail {
inline const std::shared_ptr<const RingData>& zz_data() {
    static const std::shared_ptr<const RingData> d = [] {
        auto r = std::make_shared<RingData>();
        r->kind = RingKind::Integers;
        return std::shared_ptr<const RingData>(r);
    }();
    return d;
}
inline const std::shared_ptr<const RingData>& qq_data() {
    static const std::shared_ptr<const RingData> d = [] {
        auto r = std::make_shared<RingData>();
        r->kind = RingKind::Rationals;
        return std::shared_ptr<const RingData>(r);
    }();
    return d;
}
}  // namespace detail

inline BaseRing::BaseRing() : d_(detail::zz_data()) {}
inline BaseRing BaseRing::integers() { return BaseRing(detail::zz_data()); }
inline BaseRing BaseRing::rationals() { return BaseRing(detail::qq_data()); }

inline BaseRing BaseRing::prime_field(const Integer& p) {
    if (!is_prime(p)) throw InputError("PrimeField modulus " + p.str() + " is not prime");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::PrimeField;
    r->p = p;
    return BaseRing(r);
}

inline BaseRing BaseRing::poly(const BaseRing& coefficients, std::vector<std::string> variables) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].empty()) throw InputError("empty variable name");
        for (std::size_t j = 0; j < i; ++j)
            if (variables[i] == variables[j]) throw InputError("duplicate variable '" + variables[i] + "'");
        if (coefficients.has_variable(variables[i]))
            throw InputError("variable '" + variables[i] + "' already used by the coefficient ring");
    }
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::Poly;
    r->coeffs = coefficients;
    r->vars = std::move(variables);
    return BaseRing(r);
}

inline BaseRing BaseRing::extension(std::shared_ptr<const ExtensionTable> table) {
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::Extension;
    r->ext = std::move(table);
    return BaseRing(r);
}

inline RingKind BaseRing::kind() const { return d_->kind; }
inline const Integer& BaseRing::modulus() const { return d_->p; }
inline const BaseRing& BaseRing::coefficients() const {
    if (!d_->coeffs) throw RingMismatch(describe() + " is not a polynomial ring");
    return *d_->coeffs;
}
inline const std::vector<std::string>& BaseRing::variables() const { return d_->vars; }
inline const ExtensionTable& BaseRing::table() const {
    if (!d_->ext) throw RingMismatch(describe() + " is not an extension ring");
    return *d_->ext;
}

inline Integer BaseRing::characteristic() const { return prime_ring().kind() == RingKind::PrimeField ? prime_ring().modulus() : Integer(0); }

inline BaseRing BaseRing::prime_ring() const {
    switch (kind()) {
        case RingKind::Poly: return coefficients().prime_ring();
        case RingKind::Extension: return table().base.prime_ring();
        default: return *this;
    }
}

inline bool BaseRing::is_field() const { return kind() == RingKind::Rationals || kind() == RingKind::PrimeField; }

inline bool BaseRing::has_variable(const std::string& name) const {
    switch (kind()) {
        case RingKind::Poly:
            for (auto& v : variables())
                if (v == name) return true;
            return coefficients().has_variable(name);
        case RingKind::Extension: return table().base.has_variable(name);
        default: return false;
    }
}

inline std::string BaseRing::describe() const {
    switch (kind()) {
        case RingKind::Integers: return "ZZ";
        case RingKind::Rationals: return "QQ";
        case RingKind::PrimeField: return "GF(" + modulus().str() + ")";
        case RingKind::Poly: {
            std::string s = coefficients().describe() + "[";
            for (std::size_t i = 0; i < variables().size(); ++i) s += (i ? "," : "") + variables()[i];
            return s + "]";
        }
        case RingKind::Extension: {
            const auto& t = table();
            std::string s = t.base.describe() + "<";
            for (std::size_t i = 0; i < t.labels.size(); ++i) s += (i ? "," : "") + t.labels[i];
            return s + ">";
        }
    }
    return "?";
}

inline bool BaseRing::operator==(const BaseRing& o) const {
    if (d_ == o.d_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case RingKind::Integers:
        case RingKind::Rationals: return true;
        case RingKind::PrimeField: return modulus() == o.modulus();
        case RingKind::Poly: return variables() == o.variables() && coefficients() == o.coefficients();
        case RingKind::Extension: {
            const auto &a = table(), &b = o.table();
            if (&a == &b) return true;
            if (a.rank != b.rank || a.labels != b.labels || !(a.base == b.base)) return false;
            for (std::size_t i = 0; i < a.table.size(); ++i)
                if (a.table[i] != b.table[i]) return false;
            for (std::size_t i = 0; i < a.unit.size(); ++i)
                if (a.unit[i] != b.unit[i]) return false;
            return true;
        }
    }
    return false;
}

inline const Integer& Scalar::integer() const {
    if (auto p = std::get_if<Integer>(&v_)) return *p;
    throw RingMismatch("scalar over " + ring_.describe() + " has no integer value");
}
inline const Rational& Scalar::rational() const {
    if (auto p = std::get_if<Rational>(&v_)) return *p;
    throw RingMismatch("scalar over " + ring_.describe() + " has no rational value");
}
inline const TermList& Scalar::terms() const {
    if (auto p = std::get_if<std::shared_ptr<const TermList>>(&v_)) return **p;
    throw RingMismatch("scalar over " + ring_.describe() + " is not a polynomial");
}
inline const Coords& Scalar::coords() const {
    if (auto p = std::get_if<std::shared_ptr<const Coords>>(&v_)) return **p;
    throw RingMismatch("scalar over " + ring_.describe() + " is not an extension element");
}

inline Scalar Scalar::from_integer_unchecked(BaseRing r, Integer v) {
    Scalar s;
    s.ring_ = std::move(r);
    s.v_ = std::move(v);
    return s;
}
inline Scalar Scalar::from_rational_unchecked(BaseRing r, Rational v) {
    Scalar s;
    s.ring_ = std::move(r);
    s.v_ = std::move(v);
    return s;
}
inline Scalar Scalar::from_terms_unchecked(BaseRing r, TermList t) {
    Scalar s;
    s.ring_ = std::move(r);
    s.v_ = std::make_shared<const TermList>(std::move(t));
    return s;
}
inline Scalar Scalar::from_coords_unchecked(BaseRing r, Coords c) {
    Scalar s;
    s.ring_ = std::move(r);
    s.v_ = std::make_shared<const Coords>(std::move(c));
    return s;
}

inline bool Scalar::is_zero() const {
    switch (kind()) {
        case RingKind::Integers:
        case RingKind::PrimeField: return integer() == 0;
        case RingKind::Rationals: return rational() == 0;
        case RingKind::Poly: return terms().empty();
        case RingKind::Extension:
            for (auto& c : coords())
                if (!c.is_zero()) return false;
            return true;
    }
    return false;
}

inline bool Scalar::is_one() const { return *this == one(ring_); }

inline Scalar zero(const BaseRing& r) {
    switch (r.kind()) {
        case RingKind::Integers:
        case RingKind::PrimeField: return Scalar::from_integer_unchecked(r, 0);
        case RingKind::Rationals: return Scalar::from_rational_unchecked(r, 0);
        case RingKind::Poly: return Scalar::from_terms_unchecked(r, {});
        case RingKind::Extension: {
            const auto& t = r.table();
            return Scalar::from_coords_unchecked(r, Coords(t.rank, zero(t.base)));
        }
    }
    return {};
}

inline Scalar from_int(const BaseRing& r, const Integer& n) {
    switch (r.kind()) {
        case RingKind::Integers: return Scalar::from_integer_unchecked(r, n);
        case RingKind::PrimeField: return Scalar::from_integer_unchecked(r, mod_floor(n, r.modulus()));
        case RingKind::Rationals: return Scalar::from_rational_unchecked(r, Rational(n));
        case RingKind::Poly: {
            Scalar c = from_int(r.coefficients(), n);
            if (c.is_zero()) return zero(r);
            return Scalar::from_terms_unchecked(r, {Term{Monomial(r.nvars(), 0), c}});
        }
        case RingKind::Extension: {
            const auto& t = r.table();
            Coords c;
            Scalar nn = from_int(t.base, n);
            for (auto& u : t.unit) c.push_back(u * nn);
            return Scalar::from_coords_unchecked(r, std::move(c));
        }
    }
    return {};
}

inline Scalar one(const BaseRing& r) { return from_int(r, 1); }

inline Scalar from_rational(const BaseRing& r, const Rational& q) {
    const Integer num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
    if (den == 1) return from_int(r, num);
    if (r.kind() == RingKind::Rationals) return Scalar::from_rational_unchecked(r, q);
    Scalar d = from_int(r, den);
    if (!is_unit(d)) throw InputError("denominator " + den.str() + " is not invertible in " + r.describe());
    return from_int(r, num) * inverse(d);
}

inline Scalar monomial(const BaseRing& r, const Monomial& m, const Scalar& c) {
    if (r.kind() != RingKind::Poly) throw RingMismatch("monomial() needs a polynomial ring");
    if (m.size() != r.nvars()) throw InputError("exponent vector has wrong length");
    Scalar cc = embed(c, r.coefficients());
    if (cc.is_zero()) return zero(r);
    return Scalar::from_terms_unchecked(r, {Term{m, cc}});
}

inline Scalar make_poly(const BaseRing& r, std::map<Monomial, Scalar, GrlexGreater> terms) {
    if (r.kind() != RingKind::Poly) throw RingMismatch("make_poly() needs a polynomial ring");
    TermList out;
    out.reserve(terms.size());
    for (auto& [m, c] : terms) {
        if (m.size() != r.nvars()) throw InputError("exponent vector has wrong length");
        if (c.ring() != r.coefficients()) throw RingMismatch("coefficient ring mismatch in make_poly");
        if (!c.is_zero()) out.push_back(Term{m, c});
    }
    return Scalar::from_terms_unchecked(r, std::move(out));
}

inline Scalar make_ext(const BaseRing& r, Coords coords) {
    if (r.kind() != RingKind::Extension) throw RingMismatch("make_ext() needs an extension ring");
    const auto& t = r.table();
    if (coords.size() != t.rank) throw InputError("extension element has wrong number of coordinates");
    for (auto& c : coords)
        if (c.ring() != t.base) throw RingMismatch("extension coordinate over wrong ring");
    return Scalar::from_coords_unchecked(r, std::move(coords));
}

inline Scalar variable(const BaseRing& r, const std::string& name) {
    if (r.kind() == RingKind::Poly) {
        const auto& vs = r.variables();
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (vs[i] == name) {
                Monomial m(vs.size(), 0);
                m[i] = 1;
                return Scalar::from_terms_unchecked(r, {Term{m, one(r.coefficients())}});
            }
        Scalar inner = variable(r.coefficients(), name);
        return Scalar::from_terms_unchecked(r, {Term{Monomial(vs.size(), 0), inner}});
    }
    if (r.kind() == RingKind::Extension) {
        Scalar inner = variable(r.table().base, name);
        return from_int(r, 1) * embed(inner, r);
    }
    throw InputError("ring " + r.describe() + " has no variable '" + name + "'");
}

namespace detail {

inline void require_same(const Scalar& a, const Scalar& b, const char* op) {
    if (a.ring() != b.ring())
        throw RingMismatch(std::string("ring mismatch in ") + op + ": " + a.ring().describe() + " vs " +
                           b.ring().describe());
}

inline TermList add_terms(const TermList& a, const TermList& b, bool negate_b) {
    TermList out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_greater(a[i].exps, b[j].exps))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_greater(b[j].exps, a[i].exps)) {
            out.push_back(Term{b[j].exps, negate_b ? -b[j].coeff : b[j].coeff});
            ++j;
        } else {
            Scalar c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back(Term{a[i].exps, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace detail

inline Scalar operator+(const Scalar& a, const Scalar& b) {
    detail::require_same(a, b, "+");
    const BaseRing& r = a.ring();
    switch (r.kind()) {
        case RingKind::Integers: return Scalar::from_integer_unchecked(r, a.integer() + b.integer());
        case RingKind::PrimeField: {
            Integer s = a.integer() + b.integer();
            if (s >= r.modulus()) s -= r.modulus();
            return Scalar::from_integer_unchecked(r, std::move(s));
        }
        case RingKind::Rationals: return Scalar::from_rational_unchecked(r, a.rational() + b.rational());
        case RingKind::Poly: return Scalar::from_terms_unchecked(r, detail::add_terms(a.terms(), b.terms(), false));
        case RingKind::Extension: {
            Coords c(a.coords().size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
            return Scalar::from_coords_unchecked(r, std::move(c));
        }
    }
    return {};
}

inline Scalar operator-(const Scalar& a) {
    const BaseRing& r = a.ring();
    switch (r.kind()) {
        case RingKind::Integers: return Scalar::from_integer_unchecked(r, -a.integer());
        case RingKind::PrimeField:
            return Scalar::from_integer_unchecked(r, a.integer() == 0 ? Integer(0) : r.modulus() - a.integer());
        case RingKind::Rationals: return Scalar::from_rational_unchecked(r, -a.rational());
        case RingKind::Poly: {
            TermList t = a.terms();
            for (auto& x : t) x.coeff = -x.coeff;
            return Scalar::from_terms_unchecked(r, std::move(t));
        }
        case RingKind::Extension: {
            Coords c = a.coords();
            for (auto& x : c) x = -x;
            return Scalar::from_coords_unchecked(r, std::move(c));
        }
    }
    return {};
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
    detail::require_same(a, b, "-");
    if (a.kind() == RingKind::Poly)
        return Scalar::from_terms_unchecked(a.ring(), detail::add_terms(a.terms(), b.terms(), true));
    if (a.kind() == RingKind::Integers) return Scalar::from_integer_unchecked(a.ring(), a.integer() - b.integer());
    return a + (-b);
}

inline Scalar operator*(const Scalar& a, const Scalar& b) {
    detail::require_same(a, b, "*");
    const BaseRing& r = a.ring();
    switch (r.kind()) {
        case RingKind::Integers: return Scalar::from_integer_unchecked(r, a.integer() * b.integer());
        case RingKind::PrimeField: return Scalar::from_integer_unchecked(r, (a.integer() * b.integer()) % r.modulus());
        case RingKind::Rationals: return Scalar::from_rational_unchecked(r, a.rational() * b.rational());
        case RingKind::Poly: {
            const TermList &x = a.terms(), &y = b.terms();
            if (x.empty() || y.empty()) return zero(r);
            std::map<Monomial, Scalar, GrlexGreater> acc;
            Monomial m(r.nvars());
            for (auto& s : x)
                for (auto& t : y) {
                    for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.exps[i] + t.exps[i];
                    Scalar c = s.coeff * t.coeff;
                    auto it = acc.find(m);
                    if (it == acc.end())
                        acc.emplace(m, std::move(c));
                    else
                        it->second += c;
                }
            TermList out;
            out.reserve(acc.size());
            for (auto& [mm, c] : acc)
                if (!c.is_zero()) out.push_back(Term{mm, c});
            return Scalar::from_terms_unchecked(r, std::move(out));
        }
        case RingKind::Extension: {
            const auto& t = r.table();
            const Coords &x = a.coords(), &y = b.coords();
            Coords out(t.rank, zero(t.base));
            for (std::size_t i = 0; i < t.rank; ++i) {
                if (x[i].is_zero()) continue;
                for (std::size_t j = 0; j < t.rank; ++j) {
                    if (y[j].is_zero()) continue;
                    Scalar xy = x[i] * y[j];
                    for (std::size_t k = 0; k < t.rank; ++k)
                        if (!t.c(i, j, k).is_zero()) out[k] += xy * t.c(i, j, k);
                }
            }
            return Scalar::from_coords_unchecked(r, std::move(out));
        }
    }
    return {};
}

inline bool operator==(const Scalar& a, const Scalar& b) {
    if (a.ring() != b.ring()) return false;
    switch (a.kind()) {
        case RingKind::Integers:
        case RingKind::PrimeField: return a.integer() == b.integer();
        case RingKind::Rationals: return a.rational() == b.rational();
        case RingKind::Poly: {
            const TermList &x = a.terms(), &y = b.terms();
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i].exps != y[i].exps || x[i].coeff != y[i].coeff) return false;
            return true;
        }
        case RingKind::Extension: return a.coords() == b.coords();
    }
    return false;
}

inline Scalar pow(const Scalar& a, unsigned long e) {
    Scalar result = one(a.ring()), base = a;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

namespace detail {
// Multiplication-by-x matrix of an extension element (columns = images of
// basis vectors).
inline ScalarMatrix ext_mult_matrix(const Scalar& x) {
    const auto& t = x.ring().table();
    ScalarMatrix m(t.rank, std::vector<Scalar>(t.rank, zero(t.base)));
    for (std::size_t i = 0; i < t.rank; ++i) {
        if (x.coords()[i].is_zero()) continue;
        for (std::size_t j = 0; j < t.rank; ++j)
            for (std::size_t k = 0; k < t.rank; ++k) m[k][j] += x.coords()[i] * t.c(i, j, k);
    }
    return m;
}
}  // namespace detail

inline bool is_unit(const Scalar& a) {
    switch (a.kind()) {
        case RingKind::Integers: return a.integer() == 1 || a.integer() == -1;
        case RingKind::PrimeField:
        case RingKind::Rationals: return !a.is_zero();
        case RingKind::Poly: {
            // Units of a polynomial ring over a reduced ring are the constant units.
            const auto& t = a.terms();
            if (t.size() != 1) return false;
            for (auto e : t[0].exps)
                if (e) return false;
            return is_unit(t[0].coeff);
        }
        case RingKind::Extension: return is_unit(det(a.ring().table().base, detail::ext_mult_matrix(a)));
    }
    return false;
}

inline Scalar inverse(const Scalar& a) {
    const BaseRing& r = a.ring();
    switch (r.kind()) {
        case RingKind::Integers:
            if (!is_unit(a)) break;
            return a;
        case RingKind::PrimeField: {
            if (a.is_zero()) break;
            Integer s, t;
            xgcd(a.integer(), r.modulus(), s, t);
            return Scalar::from_integer_unchecked(r, mod_floor(s, r.modulus()));
        }
        case RingKind::Rationals:
            if (a.is_zero()) break;
            return Scalar::from_rational_unchecked(r, 1 / a.rational());
        case RingKind::Poly:
            if (!is_unit(a)) break;
            return Scalar::from_terms_unchecked(r, {Term{a.terms()[0].exps, inverse(a.terms()[0].coeff)}});
        case RingKind::Extension: {
            // x^{-1} = adj(M) u / det(M) where M is multiplication by x and u the unit.
            const auto& t = r.table();
            ScalarMatrix m = detail::ext_mult_matrix(a);
            Scalar d = det(t.base, m);
            if (!is_unit(d)) break;
            Scalar dinv = inverse(d);
            // Solve M y = u by Cramer's rule (division only by the unit det).
            Coords y(t.rank);
            for (std::size_t j = 0; j < t.rank; ++j) {
                ScalarMatrix mj = m;
                for (std::size_t i = 0; i < t.rank; ++i) mj[i][j] = t.unit[i];
                y[j] = det(t.base, mj) * dinv;
            }
            return Scalar::from_coords_unchecked(r, std::move(y));
        }
    }
    throw Error(to_string(a) + " is not a unit in " + r.describe());
}

inline std::string to_string(const Scalar& a) {
    switch (a.kind()) {
        case RingKind::Integers:
        case RingKind::PrimeField: return a.integer().str();
        case RingKind::Rationals: {
            const Rational& q = a.rational();
            Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
            return d == 1 ? n.str() : n.str() + "/" + d.str();
        }
        case RingKind::Poly: {
            const auto& vs = a.ring().variables();
            if (a.terms().empty()) return "0";
            std::string s;
            bool first = true;
            for (auto& t : a.terms()) {
                std::string mono;
                for (std::size_t i = 0; i < vs.size(); ++i) {
                    if (!t.exps[i]) continue;
                    if (!mono.empty()) mono += "*";
                    mono += vs[i];
                    if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
                }
                std::string c = to_string(t.coeff);
                bool compound = t.coeff.kind() == RingKind::Poly || t.coeff.kind() == RingKind::Extension;
                if (compound && t.coeff.kind() == RingKind::Poly && t.coeff.terms().size() == 1) compound = false;
                if (compound) c = "(" + c + ")";
                std::string piece;
                if (mono.empty())
                    piece = c;
                else if (c == "1")
                    piece = mono;
                else if (c == "-1")
                    piece = "-" + mono;
                else
                    piece = c + "*" + mono;
                if (!first) s += (piece[0] == '-') ? " - " + piece.substr(1) : " + " + piece;
                else s += piece;
                first = false;
            }
            return s;
        }
        case RingKind::Extension: {
            const auto& t = a.ring().table();
            std::string s;
            for (std::size_t i = 0; i < t.rank; ++i) {
                if (a.coords()[i].is_zero()) continue;
                if (!s.empty()) s += " + ";
                s += "(" + to_string(a.coords()[i]) + ")*" + t.labels[i];
            }
            return s.empty() ? "0" : s;
        }
    }
    return "?";
}

inline BaseRing extend(const BaseRing& r, const std::string& name) {
    if (r.kind() == RingKind::Poly) {
        auto vs = r.variables();
        vs.push_back(name);
        return BaseRing::poly(r.coefficients(), vs);
    }
    return BaseRing::poly(r, {name});
}

namespace detail {
// The ring R such that rt = R[t].
inline BaseRing drop_last(const BaseRing& rt) {
    if (rt.kind() != RingKind::Poly || rt.nvars() == 0)
        throw RingMismatch("expected a polynomial ring, got " + rt.describe());
    if (rt.nvars() == 1) return rt.coefficients();
    auto vs = rt.variables();
    vs.pop_back();
    return BaseRing::poly(rt.coefficients(), vs);
}
}  // namespace detail

inline std::vector<Scalar> poly_coeffs(const Scalar& p) {
    const BaseRing& rt = p.ring();
    BaseRing r = detail::drop_last(rt);
    const std::size_t last = rt.nvars() - 1;
    std::vector<std::map<Monomial, Scalar, GrlexGreater>> parts;
    std::vector<Scalar> consts;
    for (auto& t : p.terms()) {
        std::uint32_t k = t.exps[last];
        if (parts.size() <= k) {
            parts.resize(k + 1);
            consts.resize(k + 1, zero(r));
        }
        if (rt.nvars() == 1) {
            consts[k] = t.coeff;
        } else {
            Monomial m(t.exps.begin(), t.exps.end() - 1);
            parts[k].emplace(std::move(m), t.coeff);
        }
    }
    std::vector<Scalar> out;
    for (std::size_t k = 0; k < parts.size(); ++k)
        out.push_back(rt.nvars() == 1 ? consts[k] : make_poly(r, std::move(parts[k])));
    return out;
}

inline Scalar poly_coeff(const Scalar& p, unsigned k) {
    auto c = poly_coeffs(p);
    if (k < c.size()) return c[k];
    return zero(detail::drop_last(p.ring()));
}

inline Scalar from_coeffs(const BaseRing& rt, const std::vector<Scalar>& c) {
    detail::drop_last(rt);
    Scalar t = variable(rt, rt.variables().back());
    Scalar acc = zero(rt), tk = one(rt);
    for (auto& ck : c) {
        acc += embed(ck, rt) * tk;
        tk *= t;
    }
    return acc;
}

inline unsigned total_degree(const Scalar& p) {
    if (p.kind() != RingKind::Poly || p.terms().empty()) return 0;
    unsigned d = 0;
    for (auto e : p.terms()[0].exps) d += e;
    return d;
}

inline std::optional<Scalar> try_embed(const Scalar& x, const BaseRing& target) {
    const BaseRing& src = x.ring();
    if (src == target) return x;
    switch (src.kind()) {
        case RingKind::Integers: return from_int(target, x.integer());
        case RingKind::Rationals:
            if (target.prime_ring().kind() != RingKind::Rationals) return std::nullopt;
            return from_rational(target, x.rational());
        case RingKind::PrimeField:
            if (target.characteristic() != src.modulus()) return std::nullopt;
            return from_int(target, x.integer());
        default: break;
    }
    // Into the coefficients of a polynomial ring, then as a constant.
    if (target.kind() == RingKind::Poly) {
        if (auto c = try_embed(x, target.coefficients())) {
            if (c->is_zero()) return zero(target);
            return Scalar::from_terms_unchecked(target, {Term{Monomial(target.nvars(), 0), *c}});
        }
    }
    if (target.kind() == RingKind::Extension) {
        if (auto c = try_embed(x, target.table().base)) {
            Coords cs(target.table().rank);
            for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = *c * target.table().unit[i];
            return Scalar::from_coords_unchecked(target, std::move(cs));
        }
    }
    if (src.kind() == RingKind::Poly) {
        // Variables map to the variables of the same name.
        for (auto& v : src.variables())
            if (!target.has_variable(v)) return std::nullopt;
        Scalar acc = zero(target);
        std::vector<Scalar> vars;
        for (auto& v : src.variables()) vars.push_back(variable(target, v));
        for (auto& t : x.terms()) {
            auto c = try_embed(t.coeff, target);
            if (!c) return std::nullopt;
            Scalar m = *c;
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (t.exps[i]) m *= pow(vars[i], t.exps[i]);
            acc += m;
        }
        return acc;
    }
    return std::nullopt;
}

inline Scalar embed(const Scalar& x, const BaseRing& target) {
    if (auto y = try_embed(x, target)) return *y;
    throw RingMismatch("no canonical map " + x.ring().describe() + " -> " + target.describe());
}

inline std::vector<Scalar> charpoly(const BaseRing& r, const ScalarMatrix& a) {
    const std::size_t n = a.size();
    for (auto& row : a)
        if (row.size() != n) throw InputError("charpoly of a non-square matrix");
    std::vector<Scalar> v{one(r)};
    for (std::size_t k = 0; k < n; ++k) {
        // Leading k x k block A_k, row R = a[k][0..k), column S = a[0..k)[k].
        std::vector<Scalar> col(k + 2, zero(r));
        col[0] = one(r);
        col[1] = -a[k][k];
        std::vector<Scalar> w(k);
        for (std::size_t i = 0; i < k; ++i) w[i] = a[i][k];
        for (std::size_t j = 0; j < k; ++j) {
            Scalar dot = zero(r);
            for (std::size_t i = 0; i < k; ++i) dot += a[k][i] * w[i];
            col[j + 2] = -dot;
            if (j + 1 < k) {
                std::vector<Scalar> nw(k, zero(r));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t l = 0; l < k; ++l) nw[i] += a[i][l] * w[l];
                w = std::move(nw);
            }
        }
        std::vector<Scalar> nv(k + 2, zero(r));
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, k); ++j) nv[i] += col[i - j] * v[j];
        v = std::move(nv);
    }
    return v;
}

inline Scalar det(const BaseRing& r, const ScalarMatrix& a) {
    if (a.empty()) return one(r);
    auto c = charpoly(r, a);
    return (a.size() % 2) ? -c.back() : c.back();
}

}  // namespace symalg
