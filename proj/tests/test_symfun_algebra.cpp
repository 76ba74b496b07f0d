#include "symalg/symalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>

using namespace symalg;

namespace {

const BaseRing zz = BaseRing::integers();
const BaseRing qq = BaseRing::rationals();

Scalar leibniz_det(const BaseRing& r, const ScalarMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    Scalar acc = zero(r);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
        Scalar term = one(r);
        for (std::size_t i = 0; i < n; ++i) term *= a[i][p[i]];
        acc += inv % 2 ? -term : term;
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

MultTableAlgebra gaussian() { return monic_quotient(zz, {from_int(zz, 1), from_int(zz, 0)}, "i"); }

MultTableAlgebra f4() {
    const BaseRing f2 = BaseRing::prime_field(2);
    return make_algebra(f2, {"1", "w"}, {from_int(f2, 1), from_int(f2, 0), from_int(f2, 0), from_int(f2, 1),
                                         from_int(f2, 0), from_int(f2, 1), from_int(f2, 1), from_int(f2, 1)},
                        {from_int(f2, 1), from_int(f2, 0)});
}

std::vector<Scalar> ints(std::initializer_list<long> xs) {
    std::vector<Scalar> v;
    for (long x : xs) v.push_back(from_int(zz, x));
    return v;
}

ScalarMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    ScalarMatrix m;
    for (auto& r : rows) {
        m.emplace_back();
        for (long x : r) m.back().push_back(from_int(zz, x));
    }
    return m;
}

}  // namespace

// ---- symmetric functions ---------------------------------------------------

TEST(ElementaryDecompose, Examples) {
    const BaseRing r = BaseRing::poly(zz, {"a1", "a2"});
    const Scalar a1 = variable(r, "a1"), a2 = variable(r, "a2");
    const auto e1 = elementary_decompose(a1 + a2, {"a1", "a2"});
    const BaseRing ur = e1.expr.ring();
    const Scalar u1 = variable(ur, "u1"), u2 = variable(ur, "u2");
    EXPECT_EQ(e1.expr, u1);
    EXPECT_EQ(elementary_decompose(a1 * a1 + a2 * a2, {"a1", "a2"}).expr, u1 * u1 - from_int(ur, 2) * u2);
    EXPECT_EQ(elementary_decompose(a1 * a2 + one(r), {"a1", "a2"}).expr, u2 + one(ur));
}

TEST(ElementaryDecompose, PowerSumOracle) {
    // a1^2 + a2^2 is sigma1^2 - 2 sigma2: expand the right side directly.
    const BaseRing r = BaseRing::poly(zz, {"a1", "a2"});
    const Scalar a1 = variable(r, "a1"), a2 = variable(r, "a2");
    const Scalar s1 = a1 + a2, s2 = a1 * a2;
    EXPECT_EQ(s1 * s1 - from_int(r, 2) * s2, a1 * a1 + a2 * a2);
}

TEST(ElementaryDecompose, RejectsNonSymmetric) {
    const BaseRing r = BaseRing::poly(zz, {"a1", "a2", "a3"});
    const Scalar p = variable(r, "a1") * variable(r, "a1") + variable(r, "a2");
    try {
        elementary_decompose(p, {"a1", "a2", "a3"});
        FAIL() << "expected NotSymmetric";
    } catch (const NotSymmetric& e) {
        EXPECT_NE(e.first, e.second);
    }
}

TEST(ElementaryDecompose, RoundTripAndDeterminism) {
    Rng rng(3);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto alphabet = numbered("a", n);
        const BaseRing r = BaseRing::poly(zz, alphabet);
        const auto sig = elementary_polynomials(r, alphabet);
        for (int s = 0; s < 8; ++s) {
            // a random polynomial in the sigma_i is symmetric by construction
            Scalar p = random_scalar(r, rng);
            for (int t = 0; t < 3; ++t) {
                Scalar mono = random_scalar(r, rng);
                for (std::size_t i = 0; i < n; ++i) mono *= pow(sig[i], rng.below(3));
                p += mono;
            }
            const auto a = elementary_decompose(p, alphabet), b = elementary_decompose(p, alphabet);
            ASSERT_EQ(to_string(a.expr), to_string(b.expr));
            ASSERT_EQ(evaluate_symmetric(a.expr, a.symbols[0], alphabet, r), p);
        }
    }
}

TEST(Wk, SmallCases) {
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            const auto w = compute_wk(m, n);
            ASSERT_EQ(w.size(), m * n + 1);
            EXPECT_TRUE(w[0].expr.is_one());
        }
    const auto w11 = compute_wk(1, 1);
    const BaseRing r = w11[1].expr.ring();
    EXPECT_EQ(w11[1].expr, variable(r, "u1") * variable(r, "v1"));
}

TEST(Wk, MatchesFrozenOracleTables) {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
        const std::string path = std::string(SYMALG_GOLDEN_DIR) + "/wk_" + std::to_string(m) + "_" + std::to_string(n) + ".json";
        std::ifstream in(path);
        ASSERT_TRUE(in) << path;
        const auto want = nlohmann::json::parse(in);
        EXPECT_EQ(wk_table_json(m, n, compute_wk(m, n)), want) << path;
    }
}

TEST(Wk, CapIsEnforced) {
    EXPECT_THROW(compute_wk(4, 4), ResourceLimit);
    EXPECT_THROW(compute_wk(0, 2), InputError);
    EXPECT_THROW(compute_wk(2, 2, 3), ResourceLimit);
    EXPECT_NO_THROW(compute_wk(2, 2, 4));
}

TEST(Wk, IdentityMatrices) {
    const auto w = compute_wk(1, 1);
    EXPECT_TRUE(verify_wk_on_matrices(w, zz, int_matrix({{1}}), int_matrix({{1}})).ok);
}

TEST(Wk, SymbolicDiagonalMatrices) {
    const BaseRing r = BaseRing::poly(zz, {"a1", "a2", "b1", "b2", "b3"});
    auto diag = [&](std::vector<std::string> names) {
        ScalarMatrix d(names.size(), std::vector<Scalar>(names.size(), zero(r)));
        for (std::size_t i = 0; i < names.size(); ++i) d[i][i] = variable(r, names[i]);
        return d;
    };
    EXPECT_TRUE(verify_wk_on_matrices(compute_wk(2, 3), r, diag({"a1", "a2"}), diag({"b1", "b2", "b3"})).ok);
}

TEST(Wk, RandomIntegerMatricesAgainstLeibnizOracle) {
    // det(t + X (x) Y) expanded by Leibniz over ZZ[t], with chi_k also from Leibniz.
    const BaseRing zt = BaseRing::poly(zz, {"t"});
    const Scalar t = variable(zt, "t");
    auto shifted_det = [&](const ScalarMatrix& x) {
        ScalarMatrix m(x.size(), std::vector<Scalar>(x.size(), zero(zt)));
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) m[i][j] = (i == j ? t : zero(zt)) + embed(x[i][j], zt);
        return poly_coeffs(leibniz_det(zt, m));
    };
    Rng rng(2024);
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 1}, {2, 2}}) {
        const auto w = compute_wk(m, n);
        for (int s = 0; s < 50; ++s) {
            ScalarMatrix x(m, std::vector<Scalar>(m, zero(zz))), y(n, std::vector<Scalar>(n, zero(zz)));
            for (auto& row : x)
                for (auto& e : row) e = from_int(zz, rng.range(-4, 4));
            for (auto& row : y)
                for (auto& e : row) e = from_int(zz, rng.range(-4, 4));
            ScalarMatrix k(m * n, std::vector<Scalar>(m * n, zero(zz)));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t p = 0; p < n; ++p)
                        for (std::size_t q = 0; q < n; ++q) k[i * n + p][j * n + q] = x[i][j] * y[p][q];
            const auto lhs = shifted_det(k), cx = shifted_det(x), cy = shifted_det(y);
            std::map<std::string, Scalar> images;
            for (std::size_t i = 1; i <= m; ++i) images["u" + std::to_string(i)] = cx[m - i];
            for (std::size_t j = 1; j <= n; ++j) images["v" + std::to_string(j)] = cy[n - j];
            const RingHom h(w[0].expr.ring(), zz, images);
            for (std::size_t kk = 0; kk <= m * n; ++kk) ASSERT_EQ(h(w[kk].expr), lhs[m * n - kk]) << "k=" << kk;
            ASSERT_TRUE(verify_wk_on_matrices(w, zz, x, y).ok);
        }
    }
}

TEST(Wk, DimensionMismatchRejected) {
    EXPECT_THROW(verify_wk_on_matrices(compute_wk(2, 2), zz, int_matrix({{1}}), int_matrix({{1, 0}, {0, 1}})), InputError);
    EXPECT_THROW(verify_wk_on_matrices(compute_wk(1, 1), zz, int_matrix({{1, 2}}), int_matrix({{1}})), InputError);
}

// ---- multiplication-table algebras ------------------------------------------

TEST(MakeAlgebra, GaussianIntegersHandChecked) {
    const auto b = make_algebra(zz, {"1", "i"}, ints({1, 0, 0, 1, 0, 1, -1, 0}), ints({1, 0}));
    EXPECT_EQ(b.rank(), 2u);
    EXPECT_EQ(b.c(1, 1, 0), from_int(zz, -1));
    EXPECT_EQ(b.c(1, 1, 1), from_int(zz, 0));
    EXPECT_EQ(b.c(0, 1, 1), from_int(zz, 1));
    EXPECT_EQ(b.ring(), gaussian().ring());
}

TEST(MakeAlgebra, F4IsValid) { EXPECT_EQ(f4().rank(), 2u); }

TEST(MakeAlgebra, NonCommutativeReportsIndices) {
    try {
        make_algebra(zz, {"1", "i"}, ints({1, 0, 1, 1, 0, 1, -1, 0}), ints({1, 0}));
        FAIL() << "expected AxiomViolation";
    } catch (const AxiomViolation& e) {
        EXPECT_EQ(e.axiom, "non-commutative");
        EXPECT_EQ(e.indices, (std::vector<std::size_t>{1, 2, 1}));
    }
}

TEST(MakeAlgebra, NonAssociativeRejected) {
    // x^2 = y, xy = 0, y^2 = 1: (xx)y = 1 but x(xy) = 0.
    std::vector<Scalar> t(27, zero(zz));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k) { t[(i * 3 + j) * 3 + k] = t[(j * 3 + i) * 3 + k] = one(zz); };
    for (std::size_t i = 0; i < 3; ++i) set(0, i, i);
    set(1, 1, 2);
    set(2, 2, 0);
    try {
        make_algebra(zz, {"1", "x", "y"}, t, ints({1, 0, 0}));
        FAIL() << "expected AxiomViolation";
    } catch (const AxiomViolation& e) {
        EXPECT_EQ(e.axiom, "non-associative");
    }
}

TEST(MakeAlgebra, BadUnitRejected) {
    try {
        make_algebra(zz, {"1", "i"}, ints({1, 0, 0, 1, 0, 1, -1, 0}), ints({0, 1}));
        FAIL() << "expected AxiomViolation";
    } catch (const AxiomViolation& e) {
        EXPECT_EQ(e.axiom, "bad unit");
    }
}

TEST(MakeAlgebra, ShapeErrors) {
    EXPECT_THROW(make_algebra(zz, {"1", "i"}, ints({1, 0, 0}), ints({1, 0})), InputError);
    EXPECT_THROW(make_algebra(zz, {"1", "1"}, ints({1, 0, 0, 1, 0, 1, -1, 0}), ints({1, 0})), InputError);
}

TEST(AlgMul, Examples) {
    const auto g = gaussian();
    const Scalar i = g.basis(1);
    EXPECT_EQ(alg_mul(i, i), -g.unit());
    const Scalar x = g.element({from_int(zz, 3), from_int(zz, -2)});
    EXPECT_EQ(alg_mul(g.unit(), x), x);
    const auto f = f4();
    EXPECT_EQ(alg_mul(f.basis(1), f.basis(1)), f.basis(1) + f.unit());
    EXPECT_THROW(alg_mul(i, f.basis(1)), RingMismatch);
}

TEST(MultMatrix, Examples) {
    const auto g = gaussian();
    const GoodTriple t = regular_triple(g);
    EXPECT_EQ(mult_matrix(g.unit(), t), identity_matrix(zz, 2));
    EXPECT_EQ(mult_matrix(g.basis(1), t), int_matrix({{0, -1}, {1, 0}}));

    const auto dual = monic_quotient(qq, {zero(qq), zero(qq)}, "x");
    ScalarMatrix want(2, std::vector<Scalar>(2, zero(qq)));
    want[1][0] = one(qq);
    EXPECT_EQ(mult_matrix(dual.basis(1), regular_triple(dual)), want);
    EXPECT_THROW(mult_matrix(f4().basis(1), t), Error);
}

TEST(MultMatrix, IsMultiplicativeAndLinear) {
    Rng rng(8);
    for (int s = 0; s < 20; ++s) {
        const auto b = random_monic_quotient(zz, 1 + rng.below(4), rng);
        const GoodTriple t = regular_triple(b);
        const Scalar x = random_element(b, rng), y = random_element(b, rng);
        ASSERT_EQ(mult_matrix(x * y, t), matmul(zz, mult_matrix(x, t), mult_matrix(y, t)));
        ScalarMatrix sum = mult_matrix(x, t);
        axpy(sum, one(zz), mult_matrix(y, t));
        ASSERT_EQ(mult_matrix(x + y, t), sum);
    }
}

TEST(GoodTripleChecks, ActionMustBeRingHom) {
    const auto g = gaussian();
    // i acting as the identity does not square to -1
    EXPECT_THROW(GoodTriple(g, 2, {identity_matrix(zz, 2), identity_matrix(zz, 2)}), InputError);
    EXPECT_THROW(GoodTriple(g, 2, {identity_matrix(zz, 2)}), InputError);
    EXPECT_NO_THROW(GoodTriple(g, 2, {identity_matrix(zz, 2), int_matrix({{0, -1}, {1, 0}})}));
}

TEST(TensorAlgebra, GaussianSquared) {
    const auto g = gaussian();
    const auto ta = tensor_algebra(g, g, zz);
    EXPECT_EQ(ta.algebra.rank(), 4u);
    const Scalar i1 = ta.pure(g.basis(1), g.unit());
    EXPECT_EQ(i1 * i1, -ta.pure(g.unit(), g.unit()));
    EXPECT_EQ(ta.algebra.unit(), ta.pure(g.unit(), g.unit()));
}

TEST(TensorAlgebra, RankOneAndRanksMultiply) {
    const auto r1 = monic_quotient(zz, {from_int(zz, 0)}, "z");
    EXPECT_EQ(tensor_algebra(r1, r1, zz).algebra.rank(), 1u);
    Rng rng(9);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto a = random_monic_quotient(zz, n, rng, "x"), b = random_monic_quotient(zz, m, rng, "y");
            const auto ta = tensor_algebra(a, b, zz);
            ASSERT_EQ(ta.algebra.rank(), n * m);
            const Scalar x = random_element(a, rng), x2 = random_element(a, rng), y = random_element(b, rng), y2 = random_element(b, rng);
            ASSERT_EQ(ta.pure(x, y) * ta.pure(x2, y2), ta.pure(x * x2, y * y2));
        }
}

TEST(TowerCompose, SqrtTwoSqrtThree) {
    const auto b = monic_quotient(qq, {from_int(qq, -2), zero(qq)}, "s2");
    const auto c = monic_quotient(b.ring(), {from_int(b.ring(), -3), zero(b.ring())}, "s3");
    const auto ca = tower_compose(b, c);
    EXPECT_EQ(ca.rank(), 4u);
    EXPECT_EQ(ca.base(), qq);
    const Scalar r6 = restrict_scalars(c.element({zero(b.ring()), b.basis(1)}), ca);
    EXPECT_EQ(r6 * r6, ca.lift(from_int(qq, 6)));
    // alpha_i beta_j sits at i + m j
    EXPECT_EQ(ca.labels()[1], "s2*1");
    EXPECT_EQ(ca.labels()[2], "1*s3");
}

TEST(TowerCompose, TrivialBottomAndMismatch) {
    const auto a1 = monic_quotient(zz, {from_int(zz, 0)}, "z");
    const auto c = monic_quotient(a1.ring(), {from_int(a1.ring(), 1), from_int(a1.ring(), 0)}, "i");
    EXPECT_EQ(tower_compose(a1, c).rank(), 2u);
    EXPECT_THROW(tower_compose(gaussian(), gaussian()), RingMismatch);
}

TEST(TowerCompose, BlockMatrixProperty) {
    Rng rng(10);
    for (int s = 0; s < 10; ++s) {
        const auto b = random_monic_quotient(zz, 1 + rng.below(3), rng, "x");
        const auto c = random_monic_quotient(b.ring(), 1 + rng.below(2), rng, "y");
        const auto ca = tower_compose(b, c);
        const std::size_t m = b.rank(), n = c.rank();
        const Scalar x = random_element(c, rng);
        const ScalarMatrix over_b = mult_matrix(x);
        const ScalarMatrix over_a = mult_matrix(restrict_scalars(x, ca));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t j2 = 0; j2 < n; ++j2) {
                const ScalarMatrix blk = mult_matrix(over_b[j][j2]);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t i2 = 0; i2 < m; ++i2) ASSERT_EQ(over_a[i + m * j][i2 + m * j2], blk[i][i2]);
            }
    }
}
