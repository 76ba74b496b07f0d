#pragma once
/// \file symfun.hpp
/// Fundamental theorem of symmetric polynomials by leading-term reduction,
/// and the universal polynomials w_k relating det(t + X (x) Y) to the
/// characteristic coefficients of X and Y.

#include "hom.hpp"
#include "rings.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace symalg {

class NotSymmetric : public Error {
public:
    NotSymmetric(std::string a, std::string b)
        : Error("polynomial is not symmetric under the transposition (" + a + " " + b + ")"),
          first(std::move(a)), second(std::move(b)) {}
    std::string first, second;
};

struct SymPolyExpr {
    std::vector<std::size_t> alphabet_sizes;
    // Symbols for the elementary polynomials, one group per alphabet.
    std::vector<std::vector<std::string>> symbols;
    Scalar expr;
};

inline std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

// sigma_1..sigma_m of the named variables, as elements of r.
inline std::vector<Scalar> elementary_polynomials(const BaseRing& r, const std::vector<std::string>& alphabet) {
    const std::size_t m = alphabet.size();
    std::vector<Scalar> e(m + 1, zero(r));
    e[0] = one(r);
    for (std::size_t i = 0; i < m; ++i) {
        Scalar a = variable(r, alphabet[i]);
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * a;
    }
    return std::vector<Scalar>(e.begin() + 1, e.end());
}

namespace detail {

inline std::vector<std::size_t> variable_positions(const BaseRing& r, const std::vector<std::string>& names) {
    std::vector<std::size_t> pos;
    for (auto& n : names) {
        std::size_t i = 0;
        while (i < r.nvars() && r.variables()[i] != n) ++i;
        if (i == r.nvars()) throw InputError("'" + n + "' is not a top-level variable of " + r.describe());
        pos.push_back(i);
    }
    return pos;
}

}  // namespace detail

// Writes p, symmetric in `alphabet`, as a polynomial in `symbols` (standing for
// the elementary polynomials of the alphabet) over the remaining variables.
// The result lives in C[rest..., symbols...].
inline Scalar elementary_decompose_in(const Scalar& p, const std::vector<std::string>& alphabet,
                                      const std::vector<std::string>& symbols) {
    const BaseRing& r = p.ring();
    if (r.kind() != RingKind::Poly) throw InputError("elementary_decompose needs a polynomial");
    if (symbols.size() != alphabet.size()) throw InputError("one symbol per alphabet variable required");
    const auto apos = detail::variable_positions(r, alphabet);
    std::vector<std::size_t> rpos;
    std::vector<std::string> out_vars;
    for (std::size_t i = 0; i < r.nvars(); ++i)
        if (std::find(apos.begin(), apos.end(), i) == apos.end()) {
            rpos.push_back(i);
            out_vars.push_back(r.variables()[i]);
        }
    for (auto& s : symbols) out_vars.push_back(s);
    const BaseRing out = BaseRing::poly(r.coefficients(), out_vars);
    const std::size_t m = alphabet.size();

    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::map<Monomial, Scalar, GrlexGreater> swapped;
        for (auto& t : p.terms()) {
            Monomial e = t.exps;
            std::swap(e[apos[i]], e[apos[i + 1]]);
            swapped.emplace(std::move(e), t.coeff);
        }
        if (make_poly(r, std::move(swapped)) != p) throw NotSymmetric(alphabet[i], alphabet[i + 1]);
    }

    const auto sigma = elementary_polynomials(r, alphabet);
    std::map<Monomial, Scalar, GrlexGreater> result;
    Scalar rem = p;
    while (!rem.is_zero()) {
        // Leading alphabet exponent, graded-lex on the alphabet part alone.
        Monomial lead;
        for (auto& t : rem.terms()) {
            Monomial a(m);
            for (std::size_t i = 0; i < m; ++i) a[i] = t.exps[apos[i]];
            if (lead.empty() || grlex_greater(a, lead)) lead = a;
        }
        for (std::size_t i = 0; i + 1 < m; ++i)
            if (lead[i] < lead[i + 1]) throw NotSymmetric(alphabet[i], alphabet[i + 1]);
        Monomial power(m);
        for (std::size_t i = 0; i < m; ++i) power[i] = lead[i] - (i + 1 < m ? lead[i + 1] : 0);

        Scalar prod = one(r);
        for (std::size_t i = 0; i < m; ++i)
            if (power[i]) prod *= symalg::pow(sigma[i], power[i]);

        std::map<Monomial, Scalar, GrlexGreater> coeff;  // over the rest variables, inside r
        for (auto& t : rem.terms()) {
            bool match = true;
            for (std::size_t i = 0; i < m && match; ++i) match = t.exps[apos[i]] == lead[i];
            if (!match) continue;
            Monomial e = t.exps;
            for (auto i : apos) e[i] = 0;
            coeff.emplace(e, t.coeff);
            Monomial o(out_vars.size(), 0);
            for (std::size_t j = 0; j < rpos.size(); ++j) o[j] = t.exps[rpos[j]];
            for (std::size_t i = 0; i < m; ++i) o[rpos.size() + i] = power[i];
            result.emplace(std::move(o), t.coeff);
        }
        rem -= make_poly(r, std::move(coeff)) * prod;
    }
    return make_poly(out, std::move(result));
}

// Substitutes symbols := elementary polynomials of the alphabet (in r).
inline Scalar evaluate_symmetric(const Scalar& e, const std::vector<std::string>& symbols,
                                 const std::vector<std::string>& alphabet, const BaseRing& r) {
    auto sigma = elementary_polynomials(r, alphabet);
    std::map<std::string, Scalar> images;
    std::vector<std::string> vars;
    collect_variables(e.ring(), vars);
    for (auto& v : vars) {
        auto it = std::find(symbols.begin(), symbols.end(), v);
        images[v] = it != symbols.end() ? sigma[it - symbols.begin()] : variable(r, v);
    }
    return RingHom(e.ring(), r, images)(e);
}

inline SymPolyExpr elementary_decompose(const Scalar& p, const std::vector<std::string>& alphabet,
                                        const std::string& stem = "u") {
    auto symbols = numbered(stem, alphabet.size());
    Scalar e = elementary_decompose_in(p, alphabet, symbols);
    if (evaluate_symmetric(e, symbols, alphabet, p.ring()) != p)
        throw Error("elementary_decompose round trip failed");
    return SymPolyExpr{{alphabet.size()}, {symbols}, e};
}

inline std::size_t wk_cap_default() {
    if (const char* s = std::getenv("SYMALG_MAX_MN")) {
        long v = std::strtol(s, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 12;
}

// w_0..w_mn in ZZ[u1..um, v1..vn].
inline std::vector<SymPolyExpr> compute_wk(std::size_t m, std::size_t n, std::size_t cap = wk_cap_default()) {
    if (m == 0 || n == 0) throw InputError("compute_wk needs m, n >= 1");
    if (m * n > cap)
        throw ResourceLimit("m*n = " + std::to_string(m * n) + " exceeds the cap " + std::to_string(cap));
    const auto a = numbered("a", m), b = numbered("b", n), u = numbered("u", m), v = numbered("v", n);
    std::vector<std::string> vars = a;
    vars.insert(vars.end(), b.begin(), b.end());
    vars.push_back("t");
    const BaseRing zz = BaseRing::integers();
    const BaseRing rt = BaseRing::poly(zz, vars);
    Scalar prod = one(rt);
    const Scalar t = variable(rt, "t");
    for (auto& ai : a)
        for (auto& bj : b) prod *= t + variable(rt, ai) * variable(rt, bj);
    auto coeffs = poly_coeffs(prod);

    std::vector<std::string> wv = u;
    wv.insert(wv.end(), v.begin(), v.end());
    const BaseRing wring = BaseRing::poly(zz, wv);
    std::vector<SymPolyExpr> out;
    for (std::size_t k = 0; k <= m * n; ++k) {
        const Scalar& c = coeffs[m * n - k];
        Scalar step = elementary_decompose_in(c, a, u);             // ZZ[b.., u..]
        Scalar both = elementary_decompose_in(step, b, v);          // ZZ[u.., v..]
        out.push_back(SymPolyExpr{{m, n}, {u, v}, embed(both, wring)});
    }
    return out;
}

inline ScalarMatrix kronecker(const BaseRing& r, const ScalarMatrix& x, const ScalarMatrix& y) {
    const std::size_t m = x.size(), n = y.size();
    ScalarMatrix k(m * n, std::vector<Scalar>(m * n, zero(r)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) k[i * n + p][j * n + q] = x[i][j] * y[p][q];
    return k;
}

// chi_0..chi_n with det(t + X) = sum chi_k t^{n-k}.
inline std::vector<Scalar> char_coeffs_of_matrix(const BaseRing& r, const ScalarMatrix& x) {
    ScalarMatrix neg = x;
    for (auto& row : neg)
        for (auto& e : row) e = -e;
    return charpoly(r, neg);
}

struct WkWitness {
    bool ok = true;
    std::optional<std::size_t> first_mismatch;  // k of the first differing t^{mn-k} coefficient
    std::vector<Scalar> lhs, rhs;
};

inline WkWitness verify_wk_on_matrices(const std::vector<SymPolyExpr>& w, const BaseRing& r, const ScalarMatrix& x,
                                       const ScalarMatrix& y) {
    const std::size_t m = x.size(), n = y.size();
    for (auto& row : x)
        if (row.size() != m) throw InputError("X is not square");
    for (auto& row : y)
        if (row.size() != n) throw InputError("Y is not square");
    if (w.size() != m * n + 1 || w[0].alphabet_sizes != std::vector<std::size_t>{m, n})
        throw InputError("w_k table does not match the matrix sizes");
    auto cx = char_coeffs_of_matrix(r, x), cy = char_coeffs_of_matrix(r, y);
    std::map<std::string, Scalar> images;
    for (std::size_t i = 0; i < m; ++i) images[w[0].symbols[0][i]] = cx[i + 1];
    for (std::size_t j = 0; j < n; ++j) images[w[0].symbols[1][j]] = cy[j + 1];
    RingHom h(w[0].expr.ring(), r, images);

    WkWitness res;
    res.lhs = char_coeffs_of_matrix(r, kronecker(r, x, y));
    for (std::size_t k = 0; k <= m * n; ++k) {
        res.rhs.push_back(h(w[k].expr));
        if (res.ok && res.rhs[k] != res.lhs[k]) {
            res.ok = false;
            res.first_mismatch = k;
        }
    }
    return res;
}

}  // namespace symalg
