#pragma once
/// \file suite.hpp
/// Identity suites and the report they produce.  Every suite draws from its
/// own child stream of the seed, so selecting a subset of suites or running
/// them concurrently does not change any individual result.

#include "cech.hpp"
#include "divided.hpp"
#include "elementary.hpp"
#include "json_io.hpp"
#include "multivalued.hpp"
#include "norm.hpp"
#include "sampling.hpp"
#include "symfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace symalg {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"symfun", "tensor", "norm", "divided", "multi", "cech"};
    return n;
}

struct SuiteConfig {
    std::vector<std::string> suites;  // empty selects all
    std::uint64_t seed = 42;

    std::size_t theta_samples = 200;  // theta(rho_k) = chi_k instances
    std::size_t family_samples = 30;  // base change per family, flags, towers, tensor pairs
    std::size_t wk_pairs = 50;        // matrix pairs per (m, n) shape
    std::size_t divided_samples = 100;
    std::size_t theta_div_samples = 50;
    std::size_t property_samples = 40;  // homomorphism-style properties

    LawBounds multi_bounds{2, 2};
    std::size_t multi_random = 500;
    LawBounds multi_random_bounds{4, 3};

    CechBounds cech_bounds;
    std::size_t exact_covers = 50, exact_depth = 4, exact_fibre = 3;
    std::size_t total_complexes = 100;
    std::size_t kernel_degree = 6, kernel_order = 24;

    std::string golden_dir;  // w_k goldens are compared when set
    bool timings = false;
    std::string out;

    void validate() const {
        for (auto& s : suites)
            if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                throw InputError("unknown suite '" + s + "' (choose from symfun, tensor, norm, divided, multi, cech)");
        auto cap = [](bool ok, const std::string& what) {
            if (!ok) throw ResourceLimit(what);
        };
        cap(theta_samples <= 100000 && family_samples <= 10000 && wk_pairs <= 10000 && divided_samples <= 100000 &&
                theta_div_samples <= 100000 && property_samples <= 100000 && multi_random <= 1000000,
            "sample count above cap");
        cap(multi_bounds.max_size <= 3 && multi_bounds.max_degree <= 3, "exhaustive multivalued bounds above 3");
        cap(multi_random_bounds.max_size <= 6 && multi_random_bounds.max_degree <= 6, "random multivalued bounds above 6");
        cap(cech_bounds.max_base <= 4 && cech_bounds.max_pieces <= 4 && cech_bounds.max_piece <= 5, "cover grid above 4x4x5");
        cap(exact_depth <= 5 && exact_fibre <= 4 && exact_covers <= 10000 && total_complexes <= 100000,
            "Cech exactness bounds above cap");
        cap(kernel_degree <= 6 && kernel_order <= 120, "transitive actions above degree 6 or order 120");
    }
};

struct CheckResult {
    std::string suite;
    Witness witness;
};

namespace detail {

// 64-bit FNV-1a, for input fingerprints in reports.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A constant plus a random multiple of each variable, for polynomial bases.
inline Scalar rich_scalar(const BaseRing& r, Rng& rng) {
    Scalar c = random_scalar(r, rng);
    if (r.kind() == RingKind::Poly)
        for (auto& v : r.variables()) c += random_scalar(r, rng, -2, 2) * variable(r, v);
    return c;
}

inline Scalar rich_element(const MultTableAlgebra& alg, Rng& rng) {
    Coords c;
    for (std::size_t i = 0; i < alg.rank(); ++i) c.push_back(rich_scalar(alg.base(), rng));
    return alg.element(std::move(c));
}

// base[x]/((x - c_1)...(x - c_r)) together with its roots.
struct RootedAlgebra {
    MultTableAlgebra alg;
    std::vector<Scalar> roots;
};

inline RootedAlgebra split_quotient(const BaseRing& a, std::size_t r, Rng& rng) {
    std::vector<Scalar> roots, poly{one(a)};  // ascending coefficients
    for (std::size_t i = 0; i < r; ++i) {
        Scalar c = rich_scalar(a, rng);
        std::vector<Scalar> next(poly.size() + 1, zero(a));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= c * poly[j];
        }
        poly = std::move(next);
        roots.push_back(std::move(c));
    }
    poly.pop_back();
    return {monic_quotient(a, poly, "x"), roots};
}

inline bool is_zero_matrix(const ScalarMatrix& m) {
    for (auto& row : m)
        for (auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

// Upper triangular T with diagonal drawn from the roots and f(T) = 0; the
// strictly upper part is random when that keeps f(T) = 0.
inline ScalarMatrix root_matrix(const BaseRing& a, const std::vector<Scalar>& roots, std::size_t s, Rng& rng) {
    std::vector<Scalar> diag;
    for (std::size_t i = 0; i < s; ++i) diag.push_back(roots[rng.below(roots.size())]);
    auto kills = [&](const ScalarMatrix& t) {
        ScalarMatrix acc = identity_matrix(a, s);
        for (auto& c : roots) {
            ScalarMatrix shifted = t;
            for (std::size_t i = 0; i < s; ++i) shifted[i][i] -= c;
            acc = matmul(a, acc, shifted);
        }
        return is_zero_matrix(acc);
    };
    for (int attempt = 0; attempt < 20; ++attempt) {
        ScalarMatrix t = zero_matrix(a, s, s);
        for (std::size_t i = 0; i < s; ++i) {
            t[i][i] = diag[i];
            for (std::size_t j = i + 1; j < s; ++j) t[i][j] = random_scalar(a, rng, -2, 2);
        }
        if (kills(t)) return t;
    }
    ScalarMatrix t = zero_matrix(a, s, s);
    for (std::size_t i = 0; i < s; ++i) t[i][i] = diag[i];
    return t;
}

inline ScalarMatrix random_unimodular_matrix(const BaseRing& a, std::size_t s, Rng& rng) {
    ScalarMatrix q = identity_matrix(a, s);
    if (s < 2) return q;
    for (std::size_t step = 0; step < 2 * s; ++step) {
        std::size_t i = rng.below(s), j = rng.below(s - 1);
        if (j >= i) ++j;
        const Scalar c = from_int(a, rng.coin() ? 1 : -1);
        for (std::size_t col = 0; col < s; ++col) q[i][col] += c * q[j][col];
    }
    return q;
}

// A module of rank s over a split quotient, given by the powers of an upper
// triangular T, conjugated into a random basis; the returned flag is the
// standard one in that basis, coarsened at random.
inline ModuleFlag random_flagged_triple(const BaseRing& a, Rng& rng) {
    const std::size_t r = 1 + rng.below(2), s = 2 + rng.below(r == 1 ? 3 : 2);
    RootedAlgebra ra = split_quotient(a, r, rng);
    const ScalarMatrix t = root_matrix(a, ra.roots, s, rng);
    const ScalarMatrix q = random_unimodular_matrix(a, s, rng), qi = matrix_inverse(a, q);
    std::vector<ScalarMatrix> action;
    ScalarMatrix p = identity_matrix(a, s);
    for (std::size_t i = 0; i < r; ++i) {
        action.push_back(matmul(a, q, matmul(a, p, qi)));
        p = matmul(a, p, t);
    }
    std::vector<std::size_t> dims;
    for (std::size_t d = 1; d < s; ++d)
        if (rng.coin()) dims.push_back(d);
    dims.push_back(s);
    return ModuleFlag(GoodTriple(ra.alg, s, std::move(action)), q, std::move(dims));
}

// Regular triple of a random monic quotient or a flagged module, rank <= 4.
inline GoodTriple random_triple(const BaseRing& a, Rng& rng, std::size_t max_rank = 4) {
    if (rng.coin()) {
        const std::size_t r = 1 + rng.below(max_rank);
        std::vector<Scalar> f;
        for (std::size_t i = 0; i < r; ++i) f.push_back(rich_scalar(a, rng));
        return regular_triple(monic_quotient(a, f, "x"));
    }
    return random_flagged_triple(a, rng).triple();
}

inline Scalar apply_images(const Scalar& b, const MultTableAlgebra& target, const std::vector<Scalar>& images) {
    Scalar acc = zero(target.ring());
    for (std::size_t i = 0; i < images.size(); ++i) acc += embed(b.coords()[i], target.ring()) * images[i];
    return acc;
}

// Partitions of d with at most `parts` parts, largest part first.
inline std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t d, std::size_t parts) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t left, std::uint32_t max) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (cur.size() == parts) return;
        for (std::uint32_t p = std::min(left, max); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

inline Scalar monomial_symmetric(const BaseRing& r, const std::vector<std::string>& xs, std::vector<std::uint32_t> lambda) {
    lambda.resize(xs.size(), 0);
    std::sort(lambda.begin(), lambda.end());
    Scalar acc = zero(r);
    do {
        Scalar m = one(r);
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (lambda[i]) m *= pow(variable(r, xs[i]), lambda[i]);
        acc += m;
    } while (std::next_permutation(lambda.begin(), lambda.end()));
    return acc;
}

inline nlohmann::json matrix_json(const ScalarMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& v : row) r.push_back(to_string(v));
        j.push_back(r);
    }
    return j;
}

inline nlohmann::json triple_brief(const GoodTriple& t) {
    nlohmann::json act = nlohmann::json::array();
    for (auto& m : t.action()) act.push_back(matrix_json(m));
    return {{"algebra", t.algebra().ring().describe()}, {"module_rank", t.module_rank()}, {"action", act}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// symfun: ring substrate, symmetric decomposition, w_k

inline std::vector<Witness> suite_symfun(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out;

    Witness axioms{"ring axioms"};
    const BaseRing zz = BaseRing::integers(), qq = BaseRing::rationals();
    const std::vector<BaseRing> rings{zz,
                                      qq,
                                      BaseRing::prime_field(7),
                                      BaseRing::poly(zz, {"s", "t"}),
                                      BaseRing::poly(BaseRing::prime_field(3), {"t"}),
                                      BaseRing::poly(qq, {"t"}),
                                      monic_quotient(BaseRing::prime_field(2), {one(BaseRing::prime_field(2)), one(BaseRing::prime_field(2))}, "w").ring()};
    for (auto& r : rings)
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            auto draw = [&] {
                if (r.kind() == RingKind::Extension) return random_element(MultTableAlgebra(r), rng);
                if (r.kind() == RingKind::Rationals)
                    return from_rational(r, Rational(rng.range(-9, 9), rng.range(1, 6)));
                return detail::rich_scalar(r, rng);
            };
            const Scalar a = draw(), b = draw(), c = draw();
            axioms.record((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a && a * b == b * a &&
                              a * (b + c) == a * b + a * c && a * one(r) == a && a + zero(r) == a,
                          [&] {
                              return nlohmann::json{{"ring", r.describe()}, {"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}};
                          });
        }
    out.push_back(std::move(axioms));

    Witness canon{"canonical form"};
    for (auto& r : rings)
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            if (r.kind() == RingKind::Extension || r.kind() == RingKind::Rationals) continue;
            const Scalar a = detail::rich_scalar(r, rng);
            const Scalar b = rng.coin() ? a + zero(r) : detail::rich_scalar(r, rng);
            canon.record((a - b).is_zero() == (a == b) && (a == b) == (to_string(a) == to_string(b)),
                         [&] { return nlohmann::json{{"ring", r.describe()}, {"a", to_string(a)}, {"b", to_string(b)}}; });
        }
    out.push_back(std::move(canon));

    Witness hom{"base change is a ring homomorphism"};
    const BaseRing zx = BaseRing::poly(zz, {"x"}), zt = BaseRing::poly(zz, {"t"}), zxy = BaseRing::poly(zz, {"x", "y"});
    const BaseRing qx = BaseRing::poly(qq, {"x"});
    const std::vector<RingHom> homs{
        RingHom(zz, BaseRing::prime_field(5), std::map<std::string, Scalar>{}),
        RingHom(zx, zt, {{"x", variable(zt, "t") + one(zt)}}),
        RingHom(zxy, zz, {{"x", from_int(zz, 3)}, {"y", from_int(zz, -1)}}),
        RingHom(qx, qq, {{"x", from_rational(qq, Rational(1, 2))}}),
        RingHom::canonical(zz, zx),
    };
    for (auto& h : homs) {
        const BaseRing& s = h.source();
        hom.record(h(zero(s)).is_zero() && h(one(s)).is_one(), [&] { return nlohmann::json{{"map", s.describe() + " -> " + h.target().describe()}}; });
        for (std::size_t i = 0; i < cfg.property_samples; ++i) {
            const Scalar a = detail::rich_scalar(s, rng), b = detail::rich_scalar(s, rng);
            hom.record(h(a + b) == h(a) + h(b) && h(a * b) == h(a) * h(b), [&] {
                return nlohmann::json{{"map", s.describe() + " -> " + h.target().describe()}, {"a", to_string(a)}, {"b", to_string(b)}};
            });
        }
    }
    out.push_back(std::move(hom));

    // Round trip and determinism of the decomposition on every monomial
    // symmetric polynomial of degree <= 6 in up to 4 variables.
    Witness round{"symmetric decomposition round trip"};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto xs = numbered("x", n);
        const BaseRing r = BaseRing::poly(zz, xs);
        for (std::uint32_t d = 0; d <= 6; ++d)
            for (auto& lambda : detail::partitions(d, n)) {
                const Scalar p = detail::monomial_symmetric(r, xs, lambda);
                const Scalar e1 = elementary_decompose_in(p, xs, numbered("u", n));
                const Scalar e2 = elementary_decompose_in(p, xs, numbered("u", n));
                round.record(e1 == e2 && evaluate_symmetric(e1, numbered("u", n), xs, r) == p,
                             [&] { return nlohmann::json{{"n", n}, {"polynomial", to_string(p)}, {"expression", to_string(e1)}}; });
            }
    }
    out.push_back(std::move(round));

    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}};
    for (auto [m, n] : shapes) {
        const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        const auto w = compute_wk(m, n);
        if (!cfg.golden_dir.empty()) {
            Witness g{"w_k golden " + tag};
            const std::string path = cfg.golden_dir + "/wk_" + std::to_string(m) + "_" + std::to_string(n) + ".json";
            const nlohmann::json expected = nlohmann::json::parse(detail::read_file(path));
            const nlohmann::json got = wk_table_json(m, n, w);
            g.record(got == expected, [&] { return nlohmann::json{{"golden", path}, {"computed", got}}; });
            out.push_back(std::move(g));
        }
        Witness v{"w_k on matrices " + tag};
        const BaseRing& r = zz;
        for (std::size_t s = 0; s < cfg.wk_pairs; ++s) {
            ScalarMatrix x(m, std::vector<Scalar>(m)), y(n, std::vector<Scalar>(n));
            for (auto& row : x)
                for (auto& e : row) e = random_scalar(r, rng, -4, 4);
            for (auto& row : y)
                for (auto& e : row) e = random_scalar(r, rng, -4, 4);
            const WkWitness res = verify_wk_on_matrices(w, r, x, y);
            v.record(res.ok, [&] {
                nlohmann::json l = nlohmann::json::array(), r2 = nlohmann::json::array();
                for (auto& c : res.lhs) l.push_back(to_string(c));
                for (auto& c : res.rhs) r2.push_back(to_string(c));
                return nlohmann::json{{"X", detail::matrix_json(x)}, {"Y", detail::matrix_json(y)},
                                      {"k", res.first_mismatch.value_or(0)}, {"charpoly_kron", l}, {"w_k_values", r2}};
            });
        }
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// tensor: symmetric tensors, generators, the sigma/tau maps

inline std::vector<Witness> suite_tensor(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out;
    const BaseRing zz = BaseRing::integers();

    // A generic rank-3 algebra: coefficients of x and y are indeterminates.
    {
        Witness w{"rho product identities at n = 3"};
        const std::vector<std::string> vars{"p0", "p1", "p2", "q0", "q1", "q2"};
        const BaseRing a = BaseRing::poly(zz, vars);
        const MultTableAlgebra b = monic_quotient(a, {from_int(a, -1), from_int(a, -1), zero(a)}, "t");
        const Scalar x = b.element({variable(a, "p0"), variable(a, "p1"), variable(a, "p2")});
        const Scalar y = b.element({variable(a, "q0"), variable(a, "q1"), variable(a, "q2")});
        const std::size_t n = 3;
        const TensorElement lhs1 = tensor_mul(elem_sym(x, 1, n), elem_sym(y, 1, n));
        const TensorElement rhs1 = elem_sym(x * y, 1, n) + typed_sym({1, 1}, {x, y}, n);
        const TensorElement lhs2 = tensor_mul(elem_sym(x, 1, n), elem_sym(y, 2, n));
        const TensorElement rhs2 = typed_sym({1, 2}, {x, y}, n) + typed_sym({1, 1}, {x * y, y}, n);
        w.record(lhs1 == rhs1, [&] { return nlohmann::json{{"identity", "rho_1(x) rho_1(y)"}, {"difference", tensor_json(lhs1 - rhs1)}}; });
        w.record(lhs2 == rhs2, [&] { return nlohmann::json{{"identity", "rho_1(x) rho_2(y)"}, {"difference", tensor_json(lhs2 - rhs2)}}; });
        out.push_back(std::move(w));

        Witness e{"elementary 3-tensors term by term"};
        const Scalar u = b.unit();
        const TensorElement r1 = pure_tensor(b, {x, u, u}) + pure_tensor(b, {u, x, u}) + pure_tensor(b, {u, u, x});
        const TensorElement r2 = pure_tensor(b, {x, x, u}) + pure_tensor(b, {x, u, x}) + pure_tensor(b, {u, x, x});
        const TensorElement r3 = pure_tensor(b, {x, x, x});
        const TensorElement* expect[] = {&r1, &r2, &r3};
        for (std::size_t k = 1; k <= 3; ++k) {
            const TensorElement got = elem_sym(x, k, 3);
            e.record(got == *expect[k - 1], [&] { return nlohmann::json{{"k", k}, {"difference", tensor_json(got - *expect[k - 1])}}; });
        }
        out.push_back(std::move(e));
    }

    std::vector<MultTableAlgebra> small;  // ranks 1..3 over ZZ, plus a product
    for (std::size_t r = 1; r <= 3; ++r) small.push_back(random_monic_quotient(zz, r, rng));
    small.push_back(product_algebra(monic_quotient(zz, {from_int(zz, 1), zero(zz)}, "i"), monic_quotient(zz, {zero(zz)}, "e")));

    {
        Witness inv{"elem_sym and typed_sym are invariant"};
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const MultTableAlgebra& b = small[rng.below(small.size())];
            const std::size_t n = 1 + rng.below(4);
            const Scalar x = random_element(b, rng), y = random_element(b, rng);
            const std::size_t k = rng.below(n + 1);
            const std::size_t a1 = rng.below(n + 1), a2 = rng.below(n + 1 - a1);
            const PermGroup sn = PermGroup::symmetric(n);
            inv.record(is_invariant(elem_sym(x, k, n), sn) && is_invariant(typed_sym({a1, a2}, {x, y}, n), sn), [&] {
                return nlohmann::json{{"algebra", b.ring().describe()}, {"n", n}, {"x", to_string(x)}, {"y", to_string(y)}};
            });
        }
        out.push_back(std::move(inv));
    }

    {
        Witness part{"orbit basis is a partition of the tuples"};
        for (std::size_t r = 1; r <= 3; ++r)
            for (std::size_t n = 1; n <= 4; ++n) {
                const MultTableAlgebra& b = small[r - 1];
                const OrbitBasis ob = invariant_basis(b, n);
                std::map<Tuple, int> seen;
                bool ok = ob.sums.size() == static_cast<std::size_t>(binomial(n + r - 1, r - 1));
                for (auto& s : ob.sums)
                    for (auto& [k, v] : s.terms()) {
                        ok = ok && v.is_one();
                        ++seen[k];
                    }
                std::size_t total = 1;
                for (std::size_t i = 0; i < n; ++i) total *= r;
                ok = ok && seen.size() == total;
                for (auto& [k, c] : seen) ok = ok && c == 1;
                part.record(ok, [&] { return nlohmann::json{{"rank", r}, {"n", n}, {"orbits", ob.sums.size()}}; });
            }
        out.push_back(std::move(part));
    }

    {
        Witness rt{"express_in_elementary round trip"};
        for (auto& b : small) {
            if (b.rank() > 3) continue;
            for (std::size_t n = 1; n <= 4; ++n)
                for (auto& s : invariant_basis(b, n).sums) {
                    const ElementaryExpr e = express_in_elementary(s);
                    rt.record(evaluate(e) == s, [&] {
                        return nlohmann::json{{"algebra", b.ring().describe()}, {"tensor", tensor_json(s)}, {"expression", to_string(e.expr)}};
                    });
                }
        }
        const MultTableAlgebra q2 = random_monic_quotient(BaseRing::rationals(), 2, rng);
        for (std::size_t n = 1; n <= 3; ++n)
            for (auto& s : invariant_basis(q2, n).sums) {
                const ElementaryExpr e = express_in_elementary(s, true);
                rt.record(evaluate(e) == s, [&] { return nlohmann::json{{"rho1_only", true}, {"tensor", tensor_json(s)}}; });
            }
        out.push_back(std::move(rt));
    }

    // F_4 over F_2 at n = 3.
    {
        const BaseRing f2 = BaseRing::prime_field(2);
        const MultTableAlgebra f4 = monic_quotient(f2, {one(f2), one(f2)}, "w");
        const std::size_t n = 3;
        Witness dim{"dim S_3(F_4|F_2) = 4"};
        const std::size_t d = invariant_basis(f4, n).sums.size();
        dim.record(d == 4, [&] { return nlohmann::json{{"dimension", d}}; });
        out.push_back(std::move(dim));

        Witness gen{"single elementary families generate proper subalgebras"};
        std::vector<Scalar> elems;
        for (int c0 = 0; c0 < 2; ++c0)
            for (int c1 = 0; c1 < 2; ++c1) elems.push_back(f4.element({from_int(f2, c0), from_int(f2, c1)}));
        std::vector<TensorElement> all;
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<TensorElement> gens;
            for (auto& b : elems) gens.push_back(elem_sym(b, k, n));
            all.insert(all.end(), gens.begin(), gens.end());
            const std::size_t got = generated_dimension(f4, n, gens);
            gen.record(got < d, [&] { return nlohmann::json{{"k", k}, {"generated_dimension", got}}; });
        }
        const std::size_t together = generated_dimension(f4, n, all);
        gen.record(together == d, [&] { return nlohmann::json{{"all_k", true}, {"generated_dimension", together}}; });
        bool refused = false;
        try {
            express_in_elementary(elem_sym(f4.basis(1), 2, n), true);
        } catch (const InputError&) {
            refused = true;
        }
        gen.record(refused, [] { return nlohmann::json{{"rho1_only_over_F2", "accepted"}}; });
        out.push_back(std::move(gen));
    }

    {
        Witness sig{"sigma is an injective algebra map"}, tau{"tau is an injective algebra map"};
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const MultTableAlgebra& b = small[rng.below(3)];
            const std::size_t m = 1 + rng.below(2), n = 1 + rng.below(2);
            const TensorElement x = random_invariant(b, m + n, rng), y = random_invariant(b, m + n, rng);
            const std::vector<std::size_t> parts{m, n};
            const SplitTensor sx = sigma_map(x, parts), sy = sigma_map(y, parts);
            sig.record(sigma_unsplit(sx) == x && sigma_map(tensor_mul(x, y), parts) == split_mul(sx, sy) &&
                           sigma_map(x + y, parts) == sigma_map(sigma_unsplit(sx) + sigma_unsplit(sy), parts),
                       [&] { return nlohmann::json{{"x", tensor_json(x)}, {"y", tensor_json(y)}, {"parts", parts}}; });

            const SymPower sp = sym_power_algebra(b, n);
            const TensorElement u = random_invariant(b, m * n, rng), v = random_invariant(b, m * n, rng);
            const TensorElement tu = tau_map(u, m, n, sp), tv = tau_map(v, m, n, sp);
            tau.record(tau_unmap(tu, m, n, sp) == u && tau_map(tensor_mul(u, v), m, n, sp) == tensor_mul(tu, tv) &&
                           tau_map(u + v, m, n, sp) == tu + tv,
                       [&] { return nlohmann::json{{"u", tensor_json(u)}, {"v", tensor_json(v)}, {"m", m}, {"n", n}}; });
        }
        out.push_back(std::move(sig));
        out.push_back(std::move(tau));
    }

    {
        Witness fun{"tensor powers of algebra maps preserve rho_a"};
        const MultTableAlgebra gi = monic_quotient(zz, {one(zz), zero(zz)}, "i");
        const MultTableAlgebra gi2 = product_algebra(gi, gi);
        struct Map {
            const MultTableAlgebra* src;
            const MultTableAlgebra* tgt;
            std::vector<Scalar> images;
        };
        const std::vector<Map> maps{
            {&gi, &gi, {gi.unit(), gi.lift(from_int(zz, -1)) * gi.basis(1)}},
            {&gi, &gi2, {gi2.unit(), gi2.basis(1) + gi2.basis(3)}},
        };
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const Map& f = maps[rng.below(maps.size())];
            const std::size_t n = 1 + rng.below(3), r = 1 + rng.below(2);
            std::vector<std::size_t> a;
            std::size_t left = n;
            for (std::size_t i = 0; i < r; ++i) {
                a.push_back(rng.below(left + 1));
                left -= a.back();
            }
            std::vector<Scalar> bs, fbs;
            for (std::size_t i = 0; i < r; ++i) {
                bs.push_back(random_element(*f.src, rng));
                fbs.push_back(detail::apply_images(bs.back(), *f.tgt, f.images));
            }
            const TensorElement lhs = tensor_power_map(typed_sym(a, bs, n), *f.tgt, f.images);
            const TensorElement rhs = typed_sym(a, fbs, n);
            fun.record(lhs == rhs, [&] {
                nlohmann::json b = nlohmann::json::array();
                for (auto& x : bs) b.push_back(to_string(x));
                return nlohmann::json{{"target", f.tgt->ring().describe()}, {"type", a}, {"b", b}, {"n", n}};
            });
        }
        out.push_back(std::move(fun));
    }

    // Invariants of degree <= 6 in S_n(ZZ[x]|ZZ), n <= 4, realized in the
    // truncation ZZ[x]/(x^7) where no product of that degree is cut off.
    {
        Witness bd{"bounded-degree invariants are polynomials in rho_k(x)"};
        const std::uint32_t D = 6;
        const MultTableAlgebra trunc = monic_quotient(zz, std::vector<Scalar>(D + 1, zero(zz)), "x");
        const Scalar x = trunc.basis(1);
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto xs = numbered("x", n), us = numbered("u", n);
            const BaseRing r = BaseRing::poly(zz, xs);
            std::vector<TensorElement> rho;
            for (std::size_t k = 1; k <= n; ++k) rho.push_back(elem_sym(x, k, n));
            std::map<std::pair<std::size_t, std::uint32_t>, TensorElement> powers;
            auto power = [&](std::size_t k, std::uint32_t e) -> const TensorElement& {
                auto key = std::make_pair(k, e);
                auto it = powers.find(key);
                if (it != powers.end()) return it->second;
                TensorElement acc = unit_tensor(trunc, n);
                for (std::uint32_t i = 0; i < e; ++i) acc = tensor_mul(acc, rho[k]);
                return powers.emplace(key, std::move(acc)).first->second;
            };
            for (std::uint32_t d = 0; d <= D; ++d) {
                const auto lambdas = detail::partitions(d, n);
                for (auto& lambda : lambdas) {
                    const SymPolyExpr e = elementary_decompose(detail::monomial_symmetric(r, xs, lambda), xs);
                    TensorElement val(trunc, n);
                    for (auto& term : e.expr.terms()) {
                        TensorElement m = unit_tensor(trunc, n);
                        for (std::size_t k = 0; k < n; ++k)
                            if (term.exps[k]) m = tensor_mul(m, power(k, term.exps[k]));
                        val = val + term.coeff * m;
                    }
                    Tuple rep(n, 0);
                    for (std::size_t i = 0; i < lambda.size(); ++i) rep[n - 1 - i] = lambda[i];
                    const TensorElement expect = orbit_sum(trunc, rep);
                    bd.record(val == expect, [&] {
                        return nlohmann::json{{"n", n}, {"partition", lambda}, {"expression", to_string(e.expr)}};
                    });
                }
                // Uniqueness: as many monomials in rho_1..rho_n of weighted degree d
                // as there are orbit sums of degree d.
                std::size_t monomials = 0;
                for (auto& lambda : detail::partitions(d, d == 0 ? 1 : d)) {
                    bool fits = true;
                    for (auto p : lambda) fits = fits && p <= n;
                    monomials += fits;
                }
                bd.record(monomials == lambdas.size(), [&] {
                    return nlohmann::json{{"n", n}, {"degree", d}, {"monomials", monomials}, {"orbits", lambdas.size()}};
                });
            }
        }
        out.push_back(std::move(bd));
    }
    return out;
}

// ---------------------------------------------------------------------------
// norm: theta, characteristic coefficients and the functorial identities

inline std::vector<Witness> suite_norm(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out;
    const BaseRing zz = BaseRing::integers();
    const std::vector<BaseRing> bases{zz, BaseRing::prime_field(2), BaseRing::prime_field(3), BaseRing::prime_field(5),
                                      BaseRing::prime_field(7), BaseRing::poly(zz, {"t"})};

    {
        Witness w{"theta(rho_k(b)) = chi_k(b|M)"}, det{"chi_n is the determinant"};
        for (std::size_t s = 0; s < cfg.theta_samples; ++s) {
            const BaseRing& a = bases[s % bases.size()];
            const GoodTriple t = detail::random_triple(a, rng);
            const Scalar b = detail::rich_element(t.algebra(), rng);
            const std::size_t n = t.module_rank(), k = rng.below(n + 1);
            const CharPolynomial chi = char_coeffs(b, t);
            const Scalar lhs = theta(elem_sym(b, k, n), t);
            w.record(lhs == chi[k], [&] {
                return nlohmann::json{{"triple", detail::triple_brief(t)}, {"b", to_string(b)}, {"k", k},
                                      {"theta", to_string(lhs)}, {"chi_k", to_string(chi[k])}};
            });
            det.record(chi.det() == symalg::det(a, mult_matrix(b, t)),
                       [&] { return nlohmann::json{{"triple", detail::triple_brief(t)}, {"b", to_string(b)}}; });
        }
        out.push_back(std::move(w));
        out.push_back(std::move(det));
    }

    {
        Witness w{"theta is an algebra map"};
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const GoodTriple t = detail::random_triple(bases[s % bases.size()], rng, 3);
            const std::size_t n = t.module_rank();
            const TensorElement x = random_invariant(t.algebra(), n, rng), y = random_invariant(t.algebra(), n, rng);
            w.record(theta(tensor_mul(x, y), t) == theta(x, t) * theta(y, t) && theta(x + y, t) == theta(x, t) + theta(y, t) &&
                         theta(unit_tensor(t.algebra(), n), t).is_one(),
                     [&] { return nlohmann::json{{"triple", detail::triple_brief(t)}, {"x", tensor_json(x)}, {"y", tensor_json(y)}}; });
        }
        out.push_back(std::move(w));
    }

    {
        Witness w{"mult_matrix is multiplicative"};
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const BaseRing& a = bases[s % bases.size()];
            const GoodTriple t = detail::random_triple(a, rng);
            const Scalar b = detail::rich_element(t.algebra(), rng), c = detail::rich_element(t.algebra(), rng);
            w.record(mult_matrix(b * c, t) == matmul(a, mult_matrix(b, t), mult_matrix(c, t)),
                     [&] { return nlohmann::json{{"triple", detail::triple_brief(t)}, {"b", to_string(b)}, {"c", to_string(c)}}; });
        }
        out.push_back(std::move(w));
    }

    // Families A -> A': reduction mod 5, evaluation t -> 2, adjoining a variable.
    {
        const BaseRing zt = BaseRing::poly(zz, {"t"});
        struct Family {
            std::string name;
            RingHom h;
        };
        const std::vector<Family> families{
            {"base change: reduction mod 5", RingHom(zz, BaseRing::prime_field(5), std::map<std::string, Scalar>{})},
            {"base change: evaluation t -> 2", RingHom(zt, zz, {{"t", from_int(zz, 2)}})},
            {"base change: adjoining a variable", RingHom::canonical(zz, BaseRing::poly(zz, {"y"}))},
        };
        for (auto& f : families) {
            Witness w{f.name};
            for (std::size_t s = 0; s < cfg.family_samples; ++s) w.merge(check_base_change(detail::random_triple(f.h.source(), rng, 3), f.h, 1, rng));
            out.push_back(std::move(w));
        }
    }

    {
        Witness w{"flag multiplicativity"};
        for (std::size_t s = 0; s < cfg.family_samples; ++s) {
            const BaseRing& a = s % 3 == 2 ? bases[3] : zz;
            w.merge(check_ses(detail::random_flagged_triple(a, rng), 2, rng));
        }
        out.push_back(std::move(w));
    }

    {
        Witness w{"tower transitivity"}, block{"tower block matrices"};
        const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3}, {3, 2}, {1, 4}, {4, 1}};
        for (std::size_t s = 0; s < cfg.family_samples; ++s) {
            auto [m, n] = shapes[s % shapes.size()];
            const MultTableAlgebra b = random_monic_quotient(zz, m, rng);
            std::vector<Scalar> f;
            for (std::size_t i = 0; i < n; ++i) f.push_back(random_element(b, rng, -2, 2));
            const MultTableAlgebra c = monic_quotient(b.ring(), f, "y");
            w.merge(check_tower(b, c, 1, rng));

            const MultTableAlgebra ca = tower_compose(b, c);
            const Scalar x = random_element(c, rng);
            const ScalarMatrix over_b = mult_matrix(x);
            ScalarMatrix expanded = zero_matrix(zz, m * n, m * n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t j2 = 0; j2 < n; ++j2) {
                    const ScalarMatrix e = mult_matrix(over_b[j][j2]);
                    for (std::size_t i = 0; i < m; ++i)
                        for (std::size_t i2 = 0; i2 < m; ++i2) expanded[i + m * j][i2 + m * j2] = e[i][i2];
                }
            block.record(mult_matrix(restrict_scalars(x, ca)) == expanded,
                         [&] { return nlohmann::json{{"B", b.ring().describe()}, {"C", c.ring().describe()}, {"c", to_string(x)}}; });
        }
        out.push_back(std::move(w));
        out.push_back(std::move(block));
    }

    {
        Witness w{"tensor identity"};
        const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}};
        const BaseRing zs = BaseRing::poly(zz, {"s"}), zt = BaseRing::poly(zz, {"t"});
        for (std::size_t s = 0; s < cfg.family_samples; ++s) {
            auto [n1, n2] = shapes[s % shapes.size()];
            const bool poly = s % 3 == 2 && n1 * n2 <= 2;
            const BaseRing& a1 = poly ? zs : zz;
            const BaseRing& a2 = poly ? zt : zz;
            std::vector<Scalar> f1, f2;
            for (std::size_t i = 0; i < n1; ++i) f1.push_back(detail::rich_scalar(a1, rng));
            for (std::size_t i = 0; i < n2; ++i) f2.push_back(detail::rich_scalar(a2, rng));
            w.merge(check_tensor(monic_quotient(a1, f1, "x"), monic_quotient(a2, f2, "y"), zz, 1, rng));
        }
        out.push_back(std::move(w));
    }

    {
        Witness w{"local factorization"};
        const BaseRing f2 = BaseRing::prime_field(2), f3 = BaseRing::prime_field(3);
        auto i2 = [&](long v) { return from_int(f2, v); };
        auto i3 = [&](long v) { return from_int(f3, v); };
        // F_2[y]/((y^2+y+1)^2) with residue field F_4.
        const MultTableAlgebra a = monic_quotient(f2, {i2(1), i2(0), i2(1), i2(0)}, "y");
        const MultTableAlgebra k4 = monic_quotient(f2, {i2(1), i2(1)}, "w");
        // columns: y^2+y+1, y(y^2+y+1), 1, y
        const ScalarMatrix basis{{i2(1), i2(0), i2(1), i2(0)}, {i2(1), i2(1), i2(0), i2(1)}, {i2(1), i2(1), i2(0), i2(0)}, {i2(0), i2(1), i2(0), i2(0)}};
        const LocalData loc4{ModuleFlag(regular_triple(a), basis, {2, 4}), k4,
                             {k4.element({i2(1), i2(0)}), k4.element({i2(0), i2(1)}), k4.element({i2(1), i2(1)}), k4.element({i2(1), i2(0)})}};
        w.merge(check_local_factorization(loc4, 3, rng));
        // F_3[y]/(y^3) with residue field F_3.
        const MultTableAlgebra a3 = monic_quotient(f3, {i3(0), i3(0), i3(0)}, "y");
        const MultTableAlgebra k3 = monic_quotient(f3, {i3(0)}, "z");
        const ScalarMatrix b3{{i3(0), i3(0), i3(1)}, {i3(0), i3(1), i3(0)}, {i3(1), i3(0), i3(0)}};
        const LocalData loc3{ModuleFlag(regular_triple(a3), b3, {1, 2, 3}), k3, {k3.unit(), zero(k3.ring()), zero(k3.ring())}};
        w.merge(check_local_factorization(loc3, 3, rng));
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// divided: defining relations, the comparison map, laws

inline std::vector<Witness> suite_divided(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out;
    const BaseRing zz = BaseRing::integers();
    const std::vector<BaseRing> bases{zz, BaseRing::rationals(), BaseRing::prime_field(3), BaseRing::poly(zz, {"t"})};

    {
        Witness g0{"gamma_0(x) = 1"}, scale{"gamma_d(ax) = a^d gamma_d(x)"}, add{"gamma_d(x+y) expands"},
            star{"gamma_d(x) * gamma_e(x) = C(d+e,d) gamma_{d+e}(x)"};
        for (std::size_t s = 0; s < cfg.divided_samples; ++s) {
            const BaseRing& a = bases[s % bases.size()];
            const std::size_t r = 1 + rng.below(3);
            const auto labels = numbered("e", r);
            Coords x, y;
            for (std::size_t i = 0; i < r; ++i) x.push_back(detail::rich_scalar(a, rng)), y.push_back(detail::rich_scalar(a, rng));
            const Scalar c = detail::rich_scalar(a, rng);
            const std::size_t d = rng.below(4), e = rng.below(4);
            auto ctx = [&] {
                nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
                for (auto& v : x) xs.push_back(to_string(v));
                for (auto& v : y) ys.push_back(to_string(v));
                return nlohmann::json{{"ring", a.describe()}, {"x", xs}, {"y", ys}, {"a", to_string(c)}, {"d", d}, {"e", e}};
            };
            g0.record(gamma_of(a, labels, x, 0) == divided_unit(a, labels), ctx);
            Coords cx;
            for (auto& v : x) cx.push_back(c * v);
            scale.record(gamma_of(a, labels, cx, d) == pow(c, d) * gamma_of(a, labels, x, d), ctx);
            Coords xy;
            for (std::size_t i = 0; i < r; ++i) xy.push_back(x[i] + y[i]);
            DividedElement sum(a, labels, d);
            for (std::size_t i = 0; i <= d; ++i) sum = sum + star_mul(gamma_of(a, labels, x, i), gamma_of(a, labels, y, d - i));
            add.record(gamma_of(a, labels, xy, d) == sum, ctx);
            star.record(star_mul(gamma_of(a, labels, x, d), gamma_of(a, labels, x, e)) ==
                            from_int(a, binomial(d + e, d)) * gamma_of(a, labels, x, d + e),
                        ctx);
        }
        for (auto* w : {&g0, &scale, &add, &star}) out.push_back(std::move(*w));
    }

    {
        Witness bij{"gamma_compare is a basis bijection"};
        for (std::size_t r = 1; r <= 3; ++r)
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto labels = numbered("e", r);
                const MultTableAlgebra split = split_algebra(zz, labels);
                const OrbitBasis ob = invariant_basis(split, n);
                std::set<Tuple> images;
                bool ok = true;
                for (auto& delta : multisets(r, n)) {
                    DividedElement u(zz, labels, n);
                    u.add_term(delta, one(zz));
                    const TensorElement t = gamma_compare_tensor(u, split);
                    const auto oc = orbit_coords(t);
                    ok = ok && oc.size() == 1 && oc.begin()->second.is_one() && gamma_compare_inverse(t) == u;
                    if (!oc.empty()) images.insert(oc.begin()->first);
                }
                ok = ok && images.size() == ob.reps.size() && images == std::set<Tuple>(ob.reps.begin(), ob.reps.end());
                bij.record(ok, [&] { return nlohmann::json{{"rank", r}, {"n", n}}; });
            }
        out.push_back(std::move(bij));
    }

    {
        Witness sig{"gamma_compare intertwines sigma"}, tau{"gamma_compare intertwines tau"};
        for (std::size_t r = 1; r <= 2; ++r) {
            const auto labels = numbered("e", r);
            const MultTableAlgebra split = split_algebra(zz, labels);
            for (std::size_t m = 1; m <= 2; ++m)
                for (std::size_t n = 1; n <= 2; ++n) {
                    for (auto& delta : multisets(r, m + n)) {
                        DividedElement u(zz, labels, m + n);
                        u.add_term(delta, one(zz));
                        SplitTensor expect{split, {m, n}, {}};
                        for (auto& [k, v] : sigma_div(u, m))
                            expect.terms.emplace(std::vector<Tuple>{multiset_tuple(k.first), multiset_tuple(k.second)}, v);
                        sig.record(sigma_map(gamma_compare_tensor(u, split), {m, n}) == expect,
                                   [&] { return nlohmann::json{{"rank", r}, {"m", m}, {"n", n}, {"multiset", delta}}; });
                    }
                    const SymPower sp = sym_power_algebra(split, n);
                    for (auto& delta : multisets(r, m * n)) {
                        DividedElement u(zz, labels, m * n);
                        u.add_term(delta, one(zz));
                        const DividedElement td = tau_div(u, m, n, sp.algebra.labels());
                        tau.record(tau_map(gamma_compare_tensor(u, split), m, n, sp) == gamma_compare_tensor(td, sp.algebra),
                                   [&] { return nlohmann::json{{"rank", r}, {"m", m}, {"n", n}, {"multiset", delta}}; });
                    }
                }
        }
        out.push_back(std::move(sig));
        out.push_back(std::move(tau));
    }

    {
        Witness w{"theta_div(gamma_n(b)) = det(b|M)"};
        for (std::size_t s = 0; s < cfg.theta_div_samples; ++s) {
            const BaseRing& a = bases[s % bases.size()];
            const GoodTriple t = detail::random_triple(a, rng, 3);
            const MultTableAlgebra& b = t.algebra();
            const Scalar x = detail::rich_element(b, rng);
            const std::size_t n = t.module_rank();
            const Scalar lhs = theta_div(gamma_of(a, b.labels(), x.coords(), n), t);
            const Scalar chi = char_coeffs(x, t)[n];
            const DividedElement u = gamma_compare_inverse(random_invariant(b, n, rng));
            w.record(lhs == chi && theta_div(u, t) == theta(gamma_compare_tensor(u, b), t), [&] {
                return nlohmann::json{{"triple", detail::triple_brief(t)}, {"b", to_string(x)}, {"theta_div", to_string(lhs)}, {"chi_n", to_string(chi)}};
            });
        }
        out.push_back(std::move(w));
    }

    {
        Witness det{"law/determinant"}, tp{"law/tensor_power"};
        for (std::size_t s = 0; s < 6; ++s) {
            const BaseRing& a = s % 2 ? bases[3] : zz;
            const GoodTriple t = detail::random_triple(a, rng, 3);
            const auto homs = default_hom_family(a, t.algebra().rank());
            det.merge(law_check(LawKind::Determinant, t, 0, homs, 3, rng));
            tp.merge(law_check(LawKind::TensorPower, t, 1 + rng.below(3), homs, 3, rng));
        }
        out.push_back(std::move(det));
        out.push_back(std::move(tp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// multi: the category of multivalued morphisms

inline std::vector<Witness> suite_multi(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out = verify_category_laws(cfg.multi_bounds, cfg.multi_random, cfg.multi_random_bounds, rng);
    out.push_back(check_degree_multiplicativity(cfg.multi_bounds));
    out.push_back(check_correspondences(cfg.multi_bounds));
    out.push_back(check_transfer_functoriality(cfg.multi_bounds));

    // Lambda-linear extension: biadditivity makes it compatible with the
    // operations, and composition stays associative.
    for (const BaseRing& lam : {BaseRing::integers(), BaseRing::prime_field(5), BaseRing::rationals()}) {
        Witness w{"linear extension over " + lam.describe()};
        std::vector<FinSet> sets;
        for (std::size_t n = 1; n <= 3; ++n) sets.push_back(FinSet::standard(n, "q"));
        auto pick = [&] { return sets[rng.below(sets.size())]; };
        auto combo = [&](const FinSet& x, const FinSet& y) {
            LinearMorphism acc = linearize(mv_zero(x, y), lam);
            for (int i = 0; i < 2; ++i)
                acc = lin_add(acc, lin_scale(random_scalar(lam, rng), linearize(random_morphism(x, y, 2, rng), lam)));
            return acc;
        };
        for (std::size_t s = 0; s < cfg.property_samples; ++s) {
            const FinSet x = pick(), y = pick(), z = pick(), v = pick();
            const MultiMorphism a = random_morphism(x, y, 2, rng), b = random_morphism(y, z, 2, rng), a2 = random_morphism(x, y, 2, rng);
            const LinearMorphism f = combo(x, y), g = combo(y, z), h = combo(z, v);
            const bool ok = linearize(mv_compose(b, a), lam) == lin_compose(linearize(b, lam), linearize(a, lam)) &&
                            linearize(mv_add(a, a2), lam) == lin_add(linearize(a, lam), linearize(a2, lam)) &&
                            linearize(mv_tensor(a, b), lam) == lin_tensor(linearize(a, lam), linearize(b, lam)) &&
                            lin_compose(h, lin_compose(g, f)) == lin_compose(lin_compose(h, g), f);
            w.record(ok, [&] { return nlohmann::json{{"a", morphism_json(a)}, {"b", morphism_json(b)}, {"a2", morphism_json(a2)}}; });
        }
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// cech: covers, complexes, homology

inline std::vector<Witness> suite_cech(const SuiteConfig& cfg, Rng& rng) {
    std::vector<Witness> out = check_cech_grid(cfg.cech_bounds);
    Rng exact_rng = rng.fork(1), total_rng = rng.fork(2), random_rng = rng.fork(3);
    out.push_back(check_full_exactness(cfg.exact_covers, cfg.exact_depth, cfg.exact_fibre, exact_rng));
    out.push_back(check_total_complexes(cfg.total_complexes, total_rng));
    for (auto& w : check_transitive_kernels(cfg.kernel_degree, cfg.kernel_order)) out.push_back(std::move(w));

    Witness h{"homology of random complexes"};
    for (std::size_t s = 0; s < cfg.property_samples; ++s) {
        auto [c, expect] = random_complex(random_rng, -1, 2);
        const auto got = homology(c);
        bool ok = got.size() == expect.size();
        for (std::size_t i = 0; ok && i < got.size(); ++i) ok = got[i] == expect[i];
        h.record(ok, [&] {
            nlohmann::json g = nlohmann::json::array(), e = nlohmann::json::array();
            for (auto& x : got) g.push_back(x.str());
            for (auto& x : expect) e.push_back(x.str());
            return nlohmann::json{{"computed", g}, {"expected", e}};
        });
    }
    out.push_back(std::move(h));
    return out;
}

// ---------------------------------------------------------------------------
// Running and reporting

inline std::vector<Witness> run_named_suite(const std::string& name, const SuiteConfig& cfg, Rng& rng) {
    if (name == "symfun") return suite_symfun(cfg, rng);
    if (name == "tensor") return suite_tensor(cfg, rng);
    if (name == "norm") return suite_norm(cfg, rng);
    if (name == "divided") return suite_divided(cfg, rng);
    if (name == "multi") return suite_multi(cfg, rng);
    if (name == "cech") return suite_cech(cfg, rng);
    throw InputError("unknown suite '" + name + "'");
}

struct Report {
    nlohmann::json json;
    bool ok() const { return json.at("ok").get<bool>(); }
};

inline nlohmann::json config_json(const SuiteConfig& cfg, const std::vector<std::string>& suites) {
    return {{"suites", suites},
            {"theta_samples", cfg.theta_samples},
            {"family_samples", cfg.family_samples},
            {"wk_pairs", cfg.wk_pairs},
            {"divided_samples", cfg.divided_samples},
            {"theta_div_samples", cfg.theta_div_samples},
            {"property_samples", cfg.property_samples},
            {"multi", {{"max_size", cfg.multi_bounds.max_size}, {"max_degree", cfg.multi_bounds.max_degree},
                       {"random", cfg.multi_random}, {"random_max_size", cfg.multi_random_bounds.max_size},
                       {"random_max_degree", cfg.multi_random_bounds.max_degree}}},
            {"cech", {{"max_base", cfg.cech_bounds.max_base}, {"max_pieces", cfg.cech_bounds.max_pieces},
                      {"max_piece", cfg.cech_bounds.max_piece}, {"exact_covers", cfg.exact_covers},
                      {"exact_depth", cfg.exact_depth}, {"exact_fibre", cfg.exact_fibre},
                      {"total_complexes", cfg.total_complexes}, {"kernel_degree", cfg.kernel_degree},
                      {"kernel_order", cfg.kernel_order}}}};
}

// Suites run concurrently; each owns the child stream fork(i) of the seed,
// with i its position in suite_names(), so results do not depend on which
// suites are selected or on scheduling.
inline Report run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<std::string> selected = cfg.suites.empty() ? suite_names() : cfg.suites;
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

    Rng master(cfg.seed);
    std::map<std::string, Rng> streams;
    for (std::size_t i = 0; i < suite_names().size(); ++i) streams.emplace(suite_names()[i], master.fork(i + 1));

    struct Outcome {
        std::vector<Witness> checks;
        double seconds = 0;
    };
    std::map<std::string, std::future<Outcome>> running;
    for (auto& name : selected) {
        Rng rng = streams.at(name);
        running.emplace(name, std::async(std::launch::async, [name, &cfg, rng]() mutable {
                            const auto t0 = std::chrono::steady_clock::now();
                            Outcome o{run_named_suite(name, cfg, rng), 0};
                            o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                            return o;
                        }));
    }

    std::vector<CheckResult> results;
    nlohmann::json timings = nlohmann::json::object();
    for (auto& [name, fut] : running) {
        Outcome o = fut.get();
        for (auto& w : o.checks) results.push_back({name, std::move(w)});
        timings[name] = o.seconds;
    }
    std::sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
        return std::tie(a.suite, a.witness.identity) < std::tie(b.suite, b.witness.identity);
    });

    nlohmann::json checks = nlohmann::json::array();
    std::size_t failed = 0;
    for (auto& r : results) {
        nlohmann::json j = r.witness.to_json();
        j["suite"] = r.suite;
        j["check"] = r.witness.identity;
        j.erase("identity");
        if (!r.witness.ok()) {
            ++failed;
            j["replay"] = "symalg suite --suite " + r.suite + " --seed " + std::to_string(cfg.seed);
        }
        checks.push_back(std::move(j));
    }

    nlohmann::json inputs = nlohmann::json::object();
    if (!cfg.golden_dir.empty() && std::find(selected.begin(), selected.end(), "symfun") != selected.end())
        for (auto& f : {"wk_1_2.json", "wk_2_1.json", "wk_2_2.json", "wk_2_3.json", "wk_3_2.json"})
            inputs[std::string("golden/") + f] = detail::fnv1a_hex(detail::read_file(cfg.golden_dir + "/" + f));

    nlohmann::json report{{"schema_version", kReportSchema},
                          {"tool", "symalg"},
                          {"version", kToolVersion},
                          {"seed", cfg.seed},
                          {"config", config_json(cfg, selected)},
                          {"inputs", inputs},
                          {"checks", checks},
                          {"summary", {{"checks", results.size()}, {"failed", failed}}},
                          {"ok", failed == 0}};
    if (cfg.timings) report["timings_seconds"] = timings;
    return Report{std::move(report)};
}

}  // namespace symalg
