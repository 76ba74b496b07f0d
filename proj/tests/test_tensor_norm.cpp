#include "symalg/symalg.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace symalg;

namespace {

const BaseRing zz = BaseRing::integers();
const BaseRing qq = BaseRing::rationals();
const BaseRing f2 = BaseRing::prime_field(2);

MultTableAlgebra gaussian() { return monic_quotient(zz, {from_int(zz, 1), from_int(zz, 0)}, "i"); }
MultTableAlgebra f4() { return monic_quotient(f2, {from_int(f2, 1), from_int(f2, 1)}, "w"); }
// ZZ[x]/(x^3 - x - 1): generic enough that no identity holds by accident.
MultTableAlgebra cubic() { return monic_quotient(zz, {from_int(zz, -1), from_int(zz, -1), from_int(zz, 0)}, "x"); }

TensorElement sum_of_pure(const MultTableAlgebra& b, const std::vector<std::vector<Scalar>>& terms) {
    TensorElement t(b, terms.front().size());
    for (auto& f : terms) t = t + pure_tensor(b, f);
    return t;
}

Integer binom(long n, long k) { return binomial(n, k); }

}  // namespace

// ---- tensor powers ----------------------------------------------------------

TEST(Conjugate, Examples) {
    const auto g = gaussian();
    const Scalar i = g.basis(1), u = g.unit();
    EXPECT_EQ(conjugate(i, 2, 3), pure_tensor(g, {u, i, u}));
    EXPECT_EQ(conjugate(i, 1, 1), pure_tensor(g, {i}));
    EXPECT_EQ(conjugate(u, 2, 4), unit_tensor(g, 4));
    EXPECT_THROW(conjugate(i, 0, 3), InputError);
    EXPECT_THROW(conjugate(i, 4, 3), InputError);
}

TEST(ElemSym, Examples) {
    const auto b = cubic();
    const Scalar x = b.basis(1), u = b.unit();
    EXPECT_EQ(elem_sym(x, 2, 3), sum_of_pure(b, {{x, x, u}, {x, u, x}, {u, x, x}}));
    EXPECT_EQ(elem_sym(x, 3, 3), pure_tensor(b, {x, x, x}));
    EXPECT_EQ(elem_sym(x, 0, 3), unit_tensor(b, 3));
    EXPECT_THROW(elem_sym(x, 4, 3), InputError);
}

TEST(ElemSym, SubsetSumOracle) {
    // rho_k(b) is the sum over k-subsets of slots of b there and 1 elsewhere.
    Rng rng(31);
    const auto b = cubic();
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            const Scalar x = random_element(b, rng);
            TensorElement want(b, n);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
                std::vector<Scalar> f;
                for (std::size_t s = 0; s < n; ++s) f.push_back(mask >> s & 1 ? x : b.unit());
                want = want + pure_tensor(b, f);
            }
            ASSERT_EQ(elem_sym(x, k, n), want) << "n=" << n << " k=" << k;
        }
}

TEST(TypedSym, Examples) {
    const auto b = cubic();
    const Scalar x = b.basis(1), y = b.basis(2), u = b.unit();
    EXPECT_EQ(typed_sym({2, 1}, {x, y}, 3), sum_of_pure(b, {{x, x, y}, {x, y, x}, {y, x, x}}));
    EXPECT_EQ(typed_sym({3}, {x}, 3), elem_sym(x, 3, 3));
    EXPECT_EQ(typed_sym({1, 1}, {x, y}, 3),
              sum_of_pure(b, {{x, y, u}, {y, x, u}, {x, u, y}, {y, u, x}, {u, x, y}, {u, y, x}}));
    EXPECT_THROW(typed_sym({2, 2}, {x, y}, 3), InputError);
    EXPECT_THROW(typed_sym({1, 1}, {x}, 3), InputError);
}

TEST(TensorMul, ProductIdentitiesAtDegreeThree) {
    Rng rng(32);
    const auto b = cubic();
    for (int s = 0; s < 10; ++s) {
        const Scalar x = random_element(b, rng), y = random_element(b, rng);
        ASSERT_EQ(tensor_mul(elem_sym(x, 1, 3), elem_sym(y, 1, 3)), elem_sym(x * y, 1, 3) + typed_sym({1, 1}, {x, y}, 3));
        ASSERT_EQ(tensor_mul(elem_sym(x, 1, 3), elem_sym(y, 2, 3)), typed_sym({1, 2}, {x, y}, 3) + typed_sym({1, 1}, {x * y, y}, 3));
    }
}

TEST(TensorMul, PermuteAndInvariance) {
    Rng rng(33);
    const auto b = cubic();
    const TensorElement t = pure_tensor(b, {b.basis(1), b.basis(2), b.unit()});
    EXPECT_EQ(permute(t, Permutation::identity(3)), t);
    EXPECT_FALSE(is_invariant(t, PermGroup::symmetric(3)));
    EXPECT_THROW(SymTensor{t}, InputError);
    for (std::size_t n = 1; n <= 4; ++n)
        for (int s = 0; s < 5; ++s) {
            const Scalar x = random_element(b, rng), y = random_element(b, rng);
            ASSERT_TRUE(is_invariant(elem_sym(x, rng.below(n + 1), n), PermGroup::symmetric(n)));
            if (n >= 2) ASSERT_TRUE(is_invariant(typed_sym({1, n - 1}, {x, y}, n), PermGroup::symmetric(n)));
        }
    EXPECT_THROW(tensor_mul(unit_tensor(b, 2), unit_tensor(b, 3)), Error);
}

TEST(InvariantBasis, Counts) {
    EXPECT_EQ(invariant_basis(f4(), 3).sums.size(), 4u);
    const auto r1 = monic_quotient(zz, {from_int(zz, 0)}, "z");
    EXPECT_EQ(invariant_basis(r1, 5).sums.size(), 1u);
    Rng rng(34);
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t n = 0; n <= 4; ++n) {
            const auto b = random_monic_quotient(zz, r, rng);
            ASSERT_EQ(Integer(invariant_basis(b, n).sums.size()), binom(static_cast<long>(n + r - 1), static_cast<long>(r - 1)));
        }
}

TEST(InvariantBasis, OrbitSumsPartitionTheTuples) {
    const auto b = cubic();
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto ob = invariant_basis(b, n);
        std::multiset<Tuple> covered;
        for (std::size_t i = 0; i < ob.sums.size(); ++i)
            for (auto& [tup, c] : ob.sums[i].terms()) {
                ASSERT_TRUE(c.is_one());
                covered.insert(tup);
            }
        std::size_t total = 1;
        for (std::size_t s = 0; s < n; ++s) total *= b.rank();
        ASSERT_EQ(covered.size(), total);
        ASSERT_EQ(std::set<Tuple>(covered.begin(), covered.end()).size(), total);
    }
}

TEST(InvariantBasis, WreathSubgroupHasMoreOrbits) {
    const auto g = gaussian();
    const auto full = invariant_basis(g, 4, PermGroup::symmetric(4));
    const auto wr = invariant_basis(g, 4, embedding::wreath_group(2, 2));
    EXPECT_GT(wr.sums.size(), full.sums.size());
    for (auto& s : wr.sums) EXPECT_TRUE(is_invariant(s, embedding::wreath_group(2, 2)));
}

TEST(Express, Examples) {
    const auto b = cubic();
    const Scalar x = b.basis(1), y = b.basis(2);
    const auto e = express_in_elementary(typed_sym({1, 1}, {x, y}, 3));
    EXPECT_EQ(evaluate(e), tensor_mul(elem_sym(x, 1, 3), elem_sym(y, 1, 3)) - elem_sym(x * y, 1, 3));
    const BaseRing sr = elementary_symbol_ring(b, 3);
    // the unit may appear through rho_k(1) = C(3,k)
    std::map<std::string, Scalar> sub;
    for (auto& v : sr.variables()) sub.emplace(v, variable(sr, v));
    for (std::size_t k = 1; k <= 3; ++k) sub[rho_symbol(k, b.labels()[0])] = from_int(sr, binom(3, static_cast<long>(k)));
    const RingHom unit_values(sr, sr, sub);
    EXPECT_EQ(unit_values(express_in_elementary(elem_sym(x, 2, 3)).expr), variable(sr, rho_symbol(2, "x")));
}

TEST(Express, RoundTripOnOrbitBasis) {
    Rng rng(35);
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto b = random_monic_quotient(zz, r, rng);
            for (auto& s : invariant_basis(b, n).sums) ASSERT_EQ(evaluate(express_in_elementary(s)), s);
        }
}

TEST(Express, RhoOneOnlyNeedsInvertibleFactorial) {
    const auto f = f4();
    EXPECT_THROW(express_in_elementary(elem_sym(f.basis(1), 2, 3), true), InputError);
    Rng rng(36);
    const auto b = random_monic_quotient(qq, 2, rng);
    for (auto& s : invariant_basis(b, 3).sums) {
        const auto e = express_in_elementary(s, true);
        const auto& vars = e.expr.ring().variables();
        for (auto& term : e.expr.terms())
            for (std::size_t i = 0; i < term.exps.size(); ++i)
                if (term.exps[i]) ASSERT_EQ(vars[i].rfind("R[1]", 0), 0u) << vars[i];
        ASSERT_EQ(evaluate(e), s);
    }
    EXPECT_THROW(express_in_elementary(pure_tensor(b, {b.basis(1), b.unit(), b.unit()})), InputError);
}

TEST(Generation, F4CounterexampleIsProper) {
    const auto f = f4();
    std::vector<Scalar> all{zero(f.ring()), f.unit(), f.basis(1), f.unit() + f.basis(1)};
    for (std::size_t k = 1; k <= 3; ++k) {
        std::vector<TensorElement> gens;
        for (auto& b : all) gens.push_back(elem_sym(b, k, 3));
        EXPECT_LT(generated_dimension(f, 3, gens), 4u) << "k=" << k;
    }
    std::vector<TensorElement> everything;
    for (std::size_t k = 1; k <= 3; ++k)
        for (auto& b : all) everything.push_back(elem_sym(b, k, 3));
    EXPECT_EQ(generated_dimension(f, 3, everything), 4u);
}

TEST(Sigma, ElementarySplitsAsConvolution) {
    Rng rng(37);
    const auto b = cubic();
    for (std::size_t m = 1; m <= 2; ++m)
        for (std::size_t n = 1; n <= 2; ++n)
            for (std::size_t k = 0; k <= m + n; ++k) {
                const Scalar x = random_element(b, rng);
                SplitTensor want{b, {m, n}, {}};
                for (std::size_t j = 0; j <= k; ++j) {
                    if (j > m || k - j > n) continue;
                    for (auto& [t1, c1] : orbit_coords(elem_sym(x, j, m)))
                        for (auto& [t2, c2] : orbit_coords(elem_sym(x, k - j, n))) {
                            auto& slot = want.terms[{t1, t2}];
                            slot = slot.is_zero() ? c1 * c2 : slot + c1 * c2;
                            if (slot.is_zero()) want.terms.erase({t1, t2});
                        }
                }
                ASSERT_EQ(sigma_map(elem_sym(x, k, m + n), {m, n}), want) << m << " " << n << " " << k;
            }
}

TEST(Sigma, InjectiveAndRejectsNonInvariant) {
    Rng rng(38);
    const auto b = cubic();
    const TensorElement t = random_invariant(b, 3, rng);
    EXPECT_EQ(sigma_unsplit(sigma_map(t, {1, 2})), t);
    EXPECT_EQ(sigma_unsplit(sigma_map(t, {3, 0})), t);
    EXPECT_THROW(sigma_map(pure_tensor(b, {b.basis(1), b.unit(), b.unit()}), {1, 2}), InputError);
    EXPECT_THROW(sigma_map(t, {1, 1}), InputError);
}

TEST(Tau, PurePowerNests) {
    Rng rng(39);
    const auto b = gaussian();
    for (std::size_t m = 1; m <= 2; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            const SymPower sp = sym_power_algebra(b, n);
            const Scalar x = random_element(b, rng);
            Coords inner(sp.algebra.rank(), zero(zz));
            for (auto& [rep, c] : orbit_coords(pure_tensor(b, std::vector<Scalar>(n, x)))) inner[sp.index_of(rep)] = c;
            const Scalar xn = sp.algebra.element(inner);
            ASSERT_EQ(tau_map(pure_tensor(b, std::vector<Scalar>(m * n, x)), m, n, sp),
                      pure_tensor(sp.algebra, std::vector<Scalar>(m, xn)));
        }
}

TEST(Tau, InjectiveAndMultiplicative) {
    Rng rng(40);
    const auto b = gaussian();
    const SymPower sp = sym_power_algebra(b, 2);
    for (int s = 0; s < 5; ++s) {
        const TensorElement t = random_invariant(b, 4, rng), u = random_invariant(b, 4, rng);
        ASSERT_EQ(tau_unmap(tau_map(t, 2, 2, sp), 2, 2, sp), t);
        ASSERT_EQ(tau_map(tensor_mul(t, u), 2, 2, sp), tensor_mul(tau_map(t, 2, 2, sp), tau_map(u, 2, 2, sp)));
    }
}

// ---- norms ------------------------------------------------------------------

TEST(CharCoeffs, Examples) {
    const auto g = gaussian();
    const GoodTriple t = regular_triple(g);
    const auto c = char_coeffs(g.basis(1), t).coefficients;
    EXPECT_EQ(c, (std::vector<Scalar>{from_int(zz, 1), from_int(zz, 0), from_int(zz, 1)}));

    const auto b = monic_quotient(zz, {from_int(zz, 2), from_int(zz, 0), from_int(zz, 0), from_int(zz, 5)}, "y");
    const auto cb = char_coeffs(b.unit(), regular_triple(b));
    for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(cb[k].integer(), binom(4, static_cast<long>(k)));

    const auto d = monic_quotient(qq, {zero(qq), zero(qq)}, "x");
    const auto cd = char_coeffs(d.basis(1), regular_triple(d)).coefficients;
    EXPECT_EQ(cd, (std::vector<Scalar>{one(qq), zero(qq), zero(qq)}));
}

TEST(Theta, Examples) {
    const auto g = gaussian();
    const GoodTriple t = regular_triple(g);
    EXPECT_EQ(theta(unit_tensor(g, 2), t), one(zz));
    EXPECT_EQ(theta(pure_tensor(g, {g.basis(1), g.basis(1)}), t), one(zz));
    EXPECT_THROW(theta(unit_tensor(g, 3), t), InputError);
    EXPECT_THROW(theta(pure_tensor(g, {g.basis(1), g.unit()}), t), InputError);
}

TEST(Theta, RhoGivesCharacteristicCoefficients) {
    Rng rng(41);
    const std::vector<BaseRing> bases{zz, BaseRing::prime_field(3), BaseRing::prime_field(5), BaseRing::poly(zz, {"t"})};
    for (auto& a : bases)
        for (std::size_t r = 1; r <= 4; ++r) {
            const auto b = random_monic_quotient(a, r, rng);
            const GoodTriple t = regular_triple(b);
            for (int s = 0; s < 3; ++s) {
                const Scalar x = random_element(b, rng);
                const auto chi = char_coeffs(x, t);
                for (std::size_t k = 0; k <= r; ++k) ASSERT_EQ(theta(elem_sym(x, k, r), t), chi[k]);
                ASSERT_EQ(chi.det(), det(a, mult_matrix(x, t)));
            }
        }
}

TEST(Theta, IsAlgebraMap) {
    Rng rng(42);
    for (std::size_t r = 1; r <= 4; ++r) {
        const auto b = random_monic_quotient(zz, r, rng);
        const GoodTriple t = regular_triple(b);
        for (int s = 0; s < 4; ++s) {
            const TensorElement u = random_invariant(b, r, rng), v = random_invariant(b, r, rng);
            ASSERT_EQ(theta(tensor_mul(u, v), t), theta(u, t) * theta(v, t));
            ASSERT_EQ(theta(u + v, t), theta(u, t) + theta(v, t));
        }
    }
}

TEST(NormChecks, BaseChange) {
    Rng rng(43);
    const auto g = gaussian();
    EXPECT_TRUE(check_base_change(regular_triple(g), RingHom::canonical(zz, zz), 10, rng).ok());
    EXPECT_TRUE(check_base_change(regular_triple(g), RingHom(zz, BaseRing::prime_field(5), std::map<std::string, Scalar>{}), 30, rng).ok());
    EXPECT_TRUE(check_base_change(regular_triple(g), RingHom::canonical(zz, BaseRing::poly(zz, {"x"})), 10, rng).ok());
}

TEST(NormChecks, SesOnDualNumbers) {
    Rng rng(44);
    const auto d = monic_quotient(zz, {from_int(zz, 0), from_int(zz, 0)}, "x");
    // adapted basis: columns x then 1, so L = span(x)
    const ModuleFlag flag(regular_triple(d), {{from_int(zz, 0), from_int(zz, 1)}, {from_int(zz, 1), from_int(zz, 0)}}, {1, 2});
    EXPECT_TRUE(check_ses(flag, 20, rng).ok());
    // det(a + cx | M) = a^2 = det on L times det on M/L
    for (long a = -3; a <= 3; ++a)
        for (long c = -3; c <= 3; ++c)
            ASSERT_EQ(det(zz, mult_matrix(d.element({from_int(zz, a), from_int(zz, c)}))), from_int(zz, a * a));
}

TEST(NormChecks, SesTrivialFlagAndUnstableFlag) {
    Rng rng(45);
    const auto g = gaussian();
    EXPECT_TRUE(check_ses(ModuleFlag(regular_triple(g), identity_matrix(zz, 2), {2}), 5, rng).ok());
    // span(1) is not stable under i
    EXPECT_THROW(ModuleFlag(regular_triple(g), identity_matrix(zz, 2), {1, 2}), InputError);
}

TEST(NormChecks, TowerOfSquareRoots) {
    Rng rng(46);
    const auto b = monic_quotient(qq, {from_int(qq, -2), zero(qq)}, "s2");
    const auto c = monic_quotient(b.ring(), {from_int(b.ring(), -3), zero(b.ring())}, "s3");
    EXPECT_TRUE(check_tower(b, c, 20, rng).ok());
    const auto ca = tower_compose(b, c);
    for (int s = 0; s < 20; ++s) {
        Coords cc;
        for (int j = 0; j < 2; ++j) cc.push_back(random_element(b, rng));
        const Scalar x = c.element(cc);
        const Scalar direct = det(qq, mult_matrix(restrict_scalars(x, ca)));
        const Scalar nested = det(qq, mult_matrix(det(b.ring(), mult_matrix(x))));
        ASSERT_EQ(direct, nested);
    }
    EXPECT_THROW(check_tower(b, b, 1, rng), Error);
}

TEST(NormChecks, TensorOfGaussians) {
    Rng rng(47);
    const auto g = gaussian();
    EXPECT_TRUE(check_tensor(g, g, zz, 30, rng).ok());
    // det(x (x) y) = N(x)^2 N(y)^2 on the rank-4 product
    const auto ta = tensor_algebra(g, g, zz);
    for (int s = 0; s < 20; ++s) {
        const Scalar x = random_element(g, rng), y = random_element(g, rng);
        const Scalar nx = det(zz, mult_matrix(x)), ny = det(zz, mult_matrix(y));
        ASSERT_EQ(det(zz, mult_matrix(ta.pure(x, y))), nx * nx * ny * ny);
    }
}

TEST(NormChecks, LocalFactorization) {
    Rng rng(48);
    // QQ[x]/(x^2): residue QQ, m = 2, n = 1
    const auto d = monic_quotient(qq, {zero(qq), zero(qq)}, "x");
    const auto k = monic_quotient(qq, {zero(qq)}, "z");
    const ModuleFlag flag(regular_triple(d), {{zero(qq), one(qq)}, {one(qq), zero(qq)}}, {1, 2});
    EXPECT_TRUE(check_local_factorization(LocalData{flag, k, {k.unit(), zero(k.ring())}}, 20, rng).ok());
    EXPECT_TRUE(theta(elem_sym(d.basis(1), 2, 2), regular_triple(d)).is_zero());

    // F4 over F2 as a field: m = 1, n = 2
    const auto f = f4();
    const ModuleFlag whole(regular_triple(f), identity_matrix(f2, 2), {2});
    EXPECT_TRUE(check_local_factorization(LocalData{whole, f, {f.unit(), f.basis(1)}}, 20, rng).ok());

    // QQ as its own residue field
    const ModuleFlag one_step(regular_triple(k), identity_matrix(qq, 1), {1});
    EXPECT_TRUE(check_local_factorization(LocalData{one_step, k, {k.unit()}}, 5, rng).ok());

    // quotients of the wrong size for the residue field
    EXPECT_THROW(check_local_factorization(LocalData{whole, monic_quotient(f2, {zero(f2)}, "z"), {one(monic_quotient(f2, {zero(f2)}, "z").ring()), zero(monic_quotient(f2, {zero(f2)}, "z").ring())}}, 1, rng),
                 InputError);
}
