#pragma once
/// \file json_io.hpp
/// JSON encodings for rings, scalars, algebras, triples, flags, tensors,
/// divided elements, multivalued morphisms and covers.
///
/// Integers and residues are decimal strings, rationals {"num","den"},
/// polynomials lists of {exponents, coeff}, algebra elements {"coords"}.
/// Readers also accept plain JSON numbers and "a/b" strings for convenience.

#include "cech.hpp"
#include "divided.hpp"
#include "elementary.hpp"
#include "multivalued.hpp"
#include "norm.hpp"
#include "symfun.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace symalg {

using nlohmann::json;

namespace detail {

inline const json& req(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string as_string(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InputError(std::string("expected a string for ") + what);
}

inline std::size_t as_size(const json& j, const char* what) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) return j.get<std::size_t>();
    if (j.is_string()) {
        Integer v = parse_integer(j.get<std::string>());
        if (v >= 0 && v < Integer(1) << 40) return static_cast<std::size_t>(v);
    }
    throw InputError(std::string("expected a non-negative integer for ") + what);
}

inline std::vector<std::string> as_labels(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string("expected a list of labels for ") + what);
    std::vector<std::string> out;
    for (auto& e : j) out.push_back(as_string(e, what));
    return out;
}

}  // namespace detail

// ---- rings and scalars ------------------------------------------------------

inline json algebra_to_json(const MultTableAlgebra& b);
inline MultTableAlgebra algebra_from_json(const json& j);

inline json ring_to_json(const BaseRing& r) {
    switch (r.kind()) {
        case RingKind::Integers: return {{"kind", "ZZ"}};
        case RingKind::Rationals: return {{"kind", "QQ"}};
        case RingKind::PrimeField: return {{"kind", "GF"}, {"p", r.modulus().str()}};
        case RingKind::Poly: return {{"kind", "poly"}, {"coefficients", ring_to_json(r.coefficients())}, {"variables", r.variables()}};
        case RingKind::Extension: return {{"kind", "algebra"}, {"algebra", algebra_to_json(MultTableAlgebra(r))}};
    }
    throw Error("unknown ring kind");
}

// Also accepts the shorthands "ZZ", "QQ" and "GF(p)".
inline BaseRing ring_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "ZZ") return BaseRing::integers();
        if (s == "QQ") return BaseRing::rationals();
        if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')')
            return BaseRing::prime_field(parse_integer(s.substr(3, s.size() - 4)));
        throw InputError("unknown ring '" + s + "'");
    }
    const std::string kind = detail::as_string(detail::req(j, "kind"), "ring kind");
    if (kind == "ZZ") return BaseRing::integers();
    if (kind == "QQ") return BaseRing::rationals();
    if (kind == "GF") return BaseRing::prime_field(parse_integer(detail::as_string(detail::req(j, "p"), "p")));
    if (kind == "poly")
        return BaseRing::poly(ring_from_json(detail::req(j, "coefficients")), detail::as_labels(detail::req(j, "variables"), "variables"));
    if (kind == "algebra") return algebra_from_json(detail::req(j, "algebra")).ring();
    throw InputError("unknown ring kind '" + kind + "'");
}

inline json scalar_to_json(const Scalar& x) {
    switch (x.kind()) {
        case RingKind::Integers:
        case RingKind::PrimeField: return x.integer().str();
        case RingKind::Rationals: {
            const Rational& q = x.rational();
            return {{"num", Integer(numerator(q)).str()}, {"den", Integer(denominator(q)).str()}};
        }
        case RingKind::Poly: {
            json terms = json::array();
            for (auto& t : x.terms()) terms.push_back({{"exponents", t.exps}, {"coeff", scalar_to_json(t.coeff)}});
            return terms;
        }
        case RingKind::Extension: {
            json c = json::array();
            for (auto& v : x.coords()) c.push_back(scalar_to_json(v));
            return {{"coords", c}};
        }
    }
    throw Error("unknown ring kind");
}

inline Scalar scalar_from_json(const BaseRing& r, const json& j) {
    if (j.is_number_integer()) return from_int(r, Integer(j.get<long long>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return from_int(r, parse_integer(s));
        Integer num = parse_integer(s.substr(0, slash)), den = parse_integer(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        return from_rational(r, Rational(num) / Rational(den));
    }
    switch (r.kind()) {
        case RingKind::Rationals: {
            Integer num = parse_integer(detail::as_string(detail::req(j, "num"), "num"));
            Integer den = parse_integer(detail::as_string(detail::req(j, "den"), "den"));
            if (den == 0) throw InputError("zero denominator");
            return from_rational(r, Rational(num) / Rational(den));
        }
        case RingKind::Poly: {
            if (!j.is_array()) throw InputError("polynomial must be a list of terms");
            Scalar acc = zero(r);
            for (auto& t : j) {
                Monomial m;
                for (auto& e : detail::req(t, "exponents")) m.push_back(static_cast<std::uint32_t>(detail::as_size(e, "exponent")));
                if (m.size() != r.nvars()) throw InputError("exponent vector has wrong length");
                acc += monomial(r, m, scalar_from_json(r.coefficients(), detail::req(t, "coeff")));
            }
            return acc;
        }
        case RingKind::Extension: {
            const json& c = j.is_array() ? j : detail::req(j, "coords");
            const auto& t = r.table();
            if (!c.is_array() || c.size() != t.rank) throw InputError("algebra element needs " + std::to_string(t.rank) + " coordinates");
            Coords v;
            for (auto& e : c) v.push_back(scalar_from_json(t.base, e));
            return make_ext(r, std::move(v));
        }
        default: break;
    }
    throw InputError("cannot read a scalar of " + r.describe() + " from " + j.dump());
}

inline json matrix_to_json(const ScalarMatrix& m) {
    json out = json::array();
    for (auto& row : m) {
        json r = json::array();
        for (auto& x : row) r.push_back(scalar_to_json(x));
        out.push_back(r);
    }
    return out;
}

inline ScalarMatrix matrix_from_json(const BaseRing& r, const json& j) {
    if (!j.is_array()) throw InputError("matrix must be a list of rows");
    ScalarMatrix m;
    for (auto& row : j) {
        if (!row.is_array()) throw InputError("matrix row must be a list");
        m.emplace_back();
        for (auto& x : row) m.back().push_back(scalar_from_json(r, x));
        if (m.back().size() != m.front().size()) throw InputError("ragged matrix");
    }
    return m;
}

// ---- algebras, triples, flags, homomorphisms ------------------------------

inline json algebra_to_json(const MultTableAlgebra& b) {
    json table = json::array();
    for (auto& x : b.data().table) table.push_back(scalar_to_json(x));
    json unit = json::array();
    for (auto& x : b.unit_coords()) unit.push_back(scalar_to_json(x));
    json j{{"base", ring_to_json(b.base())}, {"rank", b.rank()}, {"labels", b.labels()}, {"table", table}, {"unit", unit}};
    if (!b.name().empty()) j["name"] = b.name();
    return j;
}

// Either the full table, or {"base", "monic": [f_0, ..., f_{n-1}], "variable"}
// for base[x]/(x^n + f_{n-1} x^{n-1} + ... + f_0).
inline MultTableAlgebra algebra_from_json(const json& j) {
    const BaseRing base = ring_from_json(detail::req(j, "base"));
    if (j.contains("monic")) {
        std::vector<Scalar> f;
        for (auto& c : j.at("monic")) f.push_back(scalar_from_json(base, c));
        const std::string var = j.contains("variable") ? detail::as_string(j.at("variable"), "variable") : "x";
        return monic_quotient(base, f, var);
    }
    auto labels = detail::as_labels(detail::req(j, "labels"), "labels");
    if (j.contains("rank") && detail::as_size(j.at("rank"), "rank") != labels.size())
        throw InputError("rank does not match the number of labels");
    std::vector<Scalar> table, unit;
    for (auto& x : detail::req(j, "table")) table.push_back(scalar_from_json(base, x));
    for (auto& x : detail::req(j, "unit")) unit.push_back(scalar_from_json(base, x));
    const std::string name = j.contains("name") ? detail::as_string(j.at("name"), "name") : "";
    return make_algebra(base, std::move(labels), std::move(table), std::move(unit), name);
}

inline json triple_to_json(const GoodTriple& t) {
    json act = json::array();
    for (auto& m : t.action()) act.push_back(matrix_to_json(m));
    return {{"algebra", algebra_to_json(t.algebra())}, {"module_rank", t.module_rank()}, {"action", act}};
}

// Without "action" this is B acting on itself.
inline GoodTriple triple_from_json(const json& j) {
    MultTableAlgebra b = algebra_from_json(detail::req(j, "algebra"));
    if (!j.contains("action")) return regular_triple(b);
    const std::size_t n = detail::as_size(detail::req(j, "module_rank"), "module_rank");
    std::vector<ScalarMatrix> act;
    for (auto& m : j.at("action")) act.push_back(matrix_from_json(b.base(), m));
    return GoodTriple(b, n, std::move(act));
}

// {"triple", "basis": adapted basis as columns, "dims"}.
inline ModuleFlag flag_from_json(const json& j) {
    GoodTriple t = triple_from_json(detail::req(j, "triple"));
    ScalarMatrix p = matrix_from_json(t.base(), detail::req(j, "basis"));
    std::vector<std::size_t> dims;
    for (auto& d : detail::req(j, "dims")) dims.push_back(detail::as_size(d, "dims"));
    return ModuleFlag(std::move(t), std::move(p), std::move(dims));
}

inline json hom_to_json(const RingHom& h) {
    json images = json::object();
    for (auto& [v, x] : h.images()) images[v] = scalar_to_json(x);
    return {{"source", ring_to_json(h.source())}, {"target", ring_to_json(h.target())}, {"images", images}};
}

inline RingHom hom_from_json(const json& j) {
    BaseRing src = ring_from_json(detail::req(j, "source")), tgt = ring_from_json(detail::req(j, "target"));
    std::map<std::string, Scalar> images;
    if (j.contains("images"))
        for (auto& [v, x] : j.at("images").items()) images[v] = scalar_from_json(tgt, x);
    return RingHom(src, tgt, std::move(images));
}

// {"algebra", "coords"} or {"algebra", "element": {...}}.
inline Scalar element_from_json(const json& j) {
    MultTableAlgebra b = algebra_from_json(detail::req(j, "algebra"));
    return scalar_from_json(b.ring(), j.contains("element") ? j.at("element") : detail::req(j, "coords"));
}

// ---- tensors and elementary expressions ------------------------------------

inline json tensor_to_json(const TensorElement& t) {
    json terms = json::array();
    for (auto& [k, v] : t.terms()) {
        json labels = json::array();
        for (auto i : k) labels.push_back(t.algebra().labels()[i]);
        terms.push_back({{"tuple", labels}, {"coeff", scalar_to_json(v)}});
    }
    return {{"algebra_ref", algebra_to_json(t.algebra())}, {"n", t.n()}, {"terms", terms}};
}

// "algebra_ref" is an inline algebra or a path relative to `dir`.
inline TensorElement tensor_from_json(const json& j, const std::filesystem::path& dir = {});

inline json load_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open '" + p.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + p.string() + "' is not valid JSON: " + e.what());
    }
}

inline TensorElement tensor_from_json(const json& j, const std::filesystem::path& dir) {
    const json& ref = j.contains("algebra_ref") ? j.at("algebra_ref") : detail::req(j, "algebra");
    MultTableAlgebra b = ref.is_string() ? algebra_from_json(load_json_file(dir / ref.get<std::string>())) : algebra_from_json(ref);
    const std::size_t n = detail::as_size(detail::req(j, "n"), "n");
    TensorElement t(b, n);
    for (auto& term : detail::req(j, "terms")) {
        Tuple tup;
        for (auto& l : detail::req(term, "tuple")) tup.push_back(static_cast<std::uint32_t>(b.index_of(detail::as_string(l, "tuple"))));
        if (tup.size() != n) throw InputError("tensor tuple has the wrong length");
        t = t + scalar_from_json(b.base(), detail::req(term, "coeff")) * basis_tensor(b, tup);
    }
    return t;
}

// Polynomial terms sorted by ascending exponent vector.
inline json poly_terms_json(const Scalar& p) {
    std::vector<std::pair<Monomial, json>> terms;
    for (auto& t : p.terms()) terms.emplace_back(t.exps, scalar_to_json(t.coeff));
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    json out = json::array();
    for (auto& [m, c] : terms) out.push_back({{"exponents", m}, {"coeff", c}});
    return out;
}

inline json wk_table_json(std::size_t m, std::size_t n, const std::vector<SymPolyExpr>& w) {
    json table = json::array();
    for (auto& e : w) table.push_back(poly_terms_json(e.expr));
    return {{"m", m}, {"n", n}, {"variables", w.at(0).expr.ring().variables()}, {"w", table}};
}

inline json elementary_json(const ElementaryExpr& e) {
    return {{"algebra", algebra_to_json(e.algebra)}, {"n", e.n}, {"variables", e.expr.ring().variables()},
            {"expression", poly_terms_json(e.expr)}, {"text", to_string(e.expr)}};
}

// ---- divided elements -------------------------------------------------------

inline json divided_to_json(const DividedElement& u) {
    json terms = json::array();
    for (auto& [m, c] : u.terms()) {
        json ms = json::object();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) ms[u.labels()[i]] = m[i];
        terms.push_back({{"multiset", ms}, {"coeff", scalar_to_json(c)}});
    }
    return {{"base", ring_to_json(u.base())}, {"labels", u.labels()}, {"degree", u.degree()}, {"terms", terms}};
}

// "multiset" is {label: count} or [[label, count], ...]; "base" defaults to ZZ.
inline DividedElement divided_from_json(const json& j) {
    BaseRing base = j.contains("base") ? ring_from_json(j.at("base")) : BaseRing::integers();
    auto labels = detail::as_labels(detail::req(j, "labels"), "labels");
    const std::size_t d = detail::as_size(detail::req(j, "degree"), "degree");
    DividedElement u(base, labels, d);
    auto index = [&](const std::string& l) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return i;
        throw InputError("unknown label '" + l + "'");
    };
    for (auto& term : detail::req(j, "terms")) {
        Exponents m(labels.size(), 0);
        const json& ms = detail::req(term, "multiset");
        if (ms.is_object()) {
            for (auto& [l, c] : ms.items()) m[index(l)] += static_cast<std::uint32_t>(detail::as_size(c, "count"));
        } else if (ms.is_array()) {
            for (auto& pr : ms) {
                if (!pr.is_array() || pr.size() != 2) throw InputError("multiset entries must be [label, count]");
                m[index(detail::as_string(pr[0], "label"))] += static_cast<std::uint32_t>(detail::as_size(pr[1], "count"));
            }
        } else {
            throw InputError("multiset must be an object or a list");
        }
        u.add_term(m, scalar_from_json(base, detail::req(term, "coeff")));
    }
    return u;
}

// ---- multivalued morphisms and covers ----------------------------------------

inline MultiMorphism morphism_from_json(const json& j) {
    FinSet x(detail::as_labels(detail::req(j, "source"), "source")), y(detail::as_labels(detail::req(j, "target"), "target"));
    MultiMorphism a(x, y);
    for (auto& e : detail::req(j, "assign")) {
        const std::size_t xi = x.index_of(detail::as_string(detail::req(e, "x"), "x"));
        for (auto& m : detail::req(e, "multiset"))
            a.count(xi, y.index_of(detail::as_string(detail::req(m, "y"), "y"))) += detail::as_size(detail::req(m, "count"), "count");
    }
    return a;
}

inline Cover cover_from_json(const json& j) {
    FinSet base(detail::as_labels(detail::req(j, "base"), "base"));
    std::vector<CoverPiece> pieces;
    for (auto& p : detail::req(j, "pieces")) {
        FinSet u(detail::as_labels(detail::req(p, "elements"), "elements"));
        std::vector<std::size_t> map(u.size(), base.size());
        for (auto& [k, v] : detail::req(p, "map").items()) map[u.index_of(k)] = base.index_of(detail::as_string(v, "map"));
        for (std::size_t i = 0; i < map.size(); ++i)
            if (map[i] == base.size()) throw InputError("element '" + u.label(i) + "' has no image");
        pieces.push_back({u, std::move(map)});
    }
    return Cover(base, std::move(pieces));
}

inline json homology_json(const ChainComplex& c, const std::vector<HomologyGroup>& h) {
    json out = json::array();
    for (int k = c.lo(); k <= c.hi(); ++k) {
        const auto& g = h[static_cast<std::size_t>(k - c.lo())];
        json tors = json::array();
        for (auto& t : g.torsion) tors.push_back(t.str());
        out.push_back({{"degree", k}, {"rank", c.rank(k)}, {"free_rank", g.free_rank}, {"torsion", tors}, {"group", g.str()}});
    }
    return out;
}

}  // namespace symalg
