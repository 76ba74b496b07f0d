#include "symalg/symalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace symalg;

namespace {

ZMatrix random_matrix(std::size_t m, std::size_t n, long bound, Rng& rng) {
    ZMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.range(-bound, bound);
    return a;
}

// Determinant by cofactor expansion, for the minor oracle.
Integer small_det(const std::vector<std::vector<Integer>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Integer>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Integer> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            sub.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * a[0][j] * small_det(sub);
    }
    return s;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (static_cast<std::size_t>(__builtin_popcount(mask)) == k) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) s.push_back(i);
            out.push_back(s);
        }
    return out;
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors, f_k = d_k / d_{k-1}.
std::vector<Integer> factors_from_minors(const ZMatrix& a) {
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
        Integer g = 0;
        for (auto& rs : subsets(a.rows(), k))
            for (auto& cs : subsets(a.cols(), k)) {
                std::vector<std::vector<Integer>> m;
                for (auto r : rs) {
                    std::vector<Integer> row;
                    for (auto c : cs) row.push_back(a(r, c));
                    m.push_back(row);
                }
                g = gcd(g, small_det(m));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

std::size_t rank_mod(const ZMatrix& a, const BaseRing& k) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec v;
        for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(from_int(k, a(i, j)));
        rows.push_back(std::move(v));
    }
    return rank_over_field(k, rows, a.cols());
}

// Exactness over ZZ read off from ranks over QQ and small prime fields; enough
// for complexes whose torsion only involves primes up to 7.
bool exact_by_ranks(const ChainComplex& c) {
    for (auto& k : {BaseRing::rationals(), BaseRing::prime_field(2), BaseRing::prime_field(3), BaseRing::prime_field(5),
                    BaseRing::prime_field(7)})
        for (int deg = c.lo(); deg <= c.hi(); ++deg)
            if (rank_mod(c.d(deg - 1), k) + rank_mod(c.d(deg), k) != c.rank(deg)) return false;
    return true;
}

Permutation perm(std::vector<std::uint32_t> v) { return Permutation(std::move(v)); }

}  // namespace

// ---- Smith normal form and homology ----------------------------------------

TEST(Smith, DecompositionProperties) {
    Rng rng(71);
    for (int s = 0; s < 60; ++s) {
        const std::size_t m = 1 + rng.below(5), n = 1 + rng.below(5);
        const ZMatrix a = random_matrix(m, n, 6, rng);
        const auto sd = smith(a);
        ASSERT_EQ(sd.U * sd.D * sd.V, a) << a.str();
        ASSERT_TRUE(is_unimodular(sd.U));
        ASSERT_TRUE(is_unimodular(sd.V));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j || i >= sd.rank()) ASSERT_EQ(sd.D(i, j), 0);
        for (std::size_t i = 0; i < sd.rank(); ++i) {
            ASSERT_GT(sd.factors[i], 0);
            ASSERT_EQ(sd.D(i, i), sd.factors[i]);
            if (i) ASSERT_EQ(sd.factors[i] % sd.factors[i - 1], 0);
        }
    }
}

TEST(Smith, FactorsMatchDeterminantalDivisors) {
    Rng rng(72);
    for (int s = 0; s < 40; ++s) {
        const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
        ZMatrix a = random_matrix(m, n, 4, rng);
        if (s % 3 == 0)  // make it rank deficient
            for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j) * 2;
        ASSERT_EQ(invariant_factors(a), factors_from_minors(a)) << a.str();
    }
    EXPECT_EQ(invariant_factors(ZMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})), (std::vector<Integer>{2, 6, 12}));
}

TEST(Smith, HugeEntriesUseTheExactPath) {
    const Integer big = Integer(1) << 80;
    ZMatrix a(2, 2, {big, big * 3, big * 2, big * 8});
    const auto sd = smith(a);
    EXPECT_EQ(sd.U * sd.D * sd.V, a);
    EXPECT_EQ(sd.factors, factors_from_minors(a));
    EXPECT_EQ(sd.factors, (std::vector<Integer>{big, big * 2}));
}

TEST(Smith, IntegerKernel) {
    Rng rng(73);
    for (int s = 0; s < 30; ++s) {
        const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(5);
        const ZMatrix a = random_matrix(m, n, 5, rng);
        const ZMatrix k = integer_kernel(a);
        ASSERT_TRUE((a * k).is_zero());
        ASSERT_EQ(k.cols(), n - invariant_factors(a).size());
    }
}

TEST(Homology, MultiplicationByTwo) {
    const ChainComplex c(0, {{"a"}, {"b"}}, {ZMatrix::from_rows({{2}})});
    const auto h = homology(c);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_TRUE(h[0].is_zero());
    EXPECT_EQ(h[1].free_rank, 0u);
    EXPECT_EQ(h[1].torsion, std::vector<Integer>{2});
    EXPECT_FALSE(is_exact(c));
}

TEST(Homology, ZeroDifferentialsKeepEverything) {
    const ChainComplex c(-1, {{"a", "b"}, {"c"}, {}}, {ZMatrix(1, 2), ZMatrix(0, 1)});
    const auto h = homology(c);
    EXPECT_EQ(h[0].free_rank, 2u);
    EXPECT_EQ(h[1].free_rank, 1u);
    EXPECT_TRUE(h[2].is_zero());
}

TEST(Homology, RandomComplexesHaveTheirPlantedHomology) {
    Rng rng(74);
    for (int s = 0; s < 50; ++s) {
        auto [c, expected] = random_complex(rng, -1, 2);
        ASSERT_EQ(homology(c), expected);
    }
}

TEST(Homology, BadComplexesRejected) {
    EXPECT_THROW(ChainComplex(0, {{"a"}, {"b"}, {"c"}}, {ZMatrix::from_rows({{1}}), ZMatrix::from_rows({{1}})}), InputError);
    EXPECT_THROW(ChainComplex(0, {{"a"}, {"b"}}, {ZMatrix(2, 1)}), InputError);
    EXPECT_THROW(ChainComplex(0, {}, {}), InputError);
}

// ---- Cech complexes --------------------------------------------------------

TEST(Cech, FullComplexOfTwoSingletons) {
    const Cover c = Cover::from_fibres({{1}, {1}}, 1);
    const ChainComplex cc = full_cech(c, 2);
    EXPECT_EQ(cc.lo(), -2);
    EXPECT_EQ(cc.rank(-2), 8u);
    EXPECT_EQ(cc.rank(-1), 4u);
    EXPECT_EQ(cc.rank(0), 2u);
    EXPECT_EQ(cc.rank(1), 1u);
    EXPECT_TRUE(is_exact(full_cech(c, 3), -2));
}

TEST(Cech, FullComplexIsExactForEverySurjectiveCover) {
    Rng rng(75);
    for (int s = 0; s < 20; ++s) {
        const Cover c = random_cover(rng, 2, 2, 2);
        for (std::size_t x = 0; x < c.base().size(); ++x) {
            const ChainComplex cc = full_cech(c, 3, {x});
            ASSERT_TRUE(is_exact(cc, -2)) << cover_json(c).dump();
        }
    }
}

TEST(Cech, ReducedComplexExamples) {
    // one piece with two points over x: 2 -> 1, not injective
    const Cover doubled = Cover::from_fibres({{2}}, 1);
    const auto h = homology(reduced_cech(doubled));
    EXPECT_EQ(h.front().free_rank, 1u);
    EXPECT_FALSE(is_finitistic(doubled).holds());
    EXPECT_FALSE(is_unifibrant(doubled).holds());
    EXPECT_EQ(euler_char(doubled, 0), -1);
    EXPECT_THROW(homotopy_witness(doubled, 0), InputError);

    const Cover two = Cover::from_fibres({{1}, {1}}, 1);
    EXPECT_TRUE(is_finitistic(two).holds());
    EXPECT_EQ(*is_unifibrant(two).witness[0], 0u);
    EXPECT_EQ(euler_char(two, 0), 0);
    EXPECT_FALSE(homotopy_witness(two, 0).failing_degree().has_value());

    // x0 covered once, x1 only by a doubled fibre
    const Cover mixed = Cover::from_fibres({{1, 2}}, 2);
    const auto u = is_unifibrant(mixed);
    EXPECT_TRUE(u.holds_at(0));
    EXPECT_FALSE(u.holds_at(1));
    const auto f = is_finitistic(mixed);
    EXPECT_TRUE(f.exact_at(0));
    EXPECT_FALSE(f.exact_at(1));
}

TEST(Cech, FinitisticIffUnifibrantAgainstRankOracle) {
    for (const Cover& c : enumerate_covers(2, 3, 3)) {
        if (!c.surjective()) {
            ASSERT_THROW(is_finitistic(c), InputError);
            continue;
        }
        const auto u = is_unifibrant(c);
        for (std::size_t x = 0; x < c.base().size(); ++x) {
            const ChainComplex lx = reduced_cech(c, {}, {x});
            ASSERT_EQ(exact_by_ranks(lx), u.holds_at(x)) << cover_json(c).dump();
            ASSERT_EQ(alternating_rank_sum(lx), euler_char(c, x));
        }
    }
}

TEST(Cech, HomotopiesContract) {
    for (const Cover& c : enumerate_covers(2, 3, 3)) {
        if (!c.surjective()) continue;
        const auto u = is_unifibrant(c);
        for (std::size_t x = 0; x < c.base().size(); ++x)
            if (u.holds_at(x)) {
                const auto h = homotopy_witness(c, x);
                ASSERT_FALSE(h.failing_degree().has_value()) << cover_json(c).dump();
                ASSERT_EQ(h.order.front(), h.piece);
            }
    }
}

TEST(Cech, ReorderSignsAndInverse) {
    const Cover c = Cover::from_fibres({{1}, {1}}, 1);
    const ChainMap m = reorder_iso(c, {0, 1}, {1, 0});
    EXPECT_FALSE(m.non_commuting_degree().has_value());
    // the single pair tuple picks up the transposition sign
    EXPECT_EQ(m.at(-1), ZMatrix::from_rows({{-1}}));

    const Cover three = Cover::from_fibres({{1, 1}, {2, 1}, {1, 2}}, 2);
    const std::vector<std::size_t> o1{0, 1, 2}, o2{2, 0, 1};
    const ChainMap there = reorder_iso(three, o1, o2), back = reorder_iso(three, o2, o1);
    EXPECT_FALSE(there.non_commuting_degree().has_value());
    for (int k = there.source.lo(); k <= there.source.hi(); ++k)
        ASSERT_EQ(back.at(k) * there.at(k), ZMatrix::identity(there.source.rank(k)));
    EXPECT_THROW(reorder_iso(three, {0, 1}, o2), InputError);
    EXPECT_THROW(reorder_iso(three, {0, 1, 1}, o2), InputError);
}

TEST(Cech, PerPointAssemblesToWhole) {
    for (const Cover& c : enumerate_covers(2, 2, 2)) {
        if (!c.surjective()) continue;
        const ChainComplex whole = reduced_cech(c);
        for (int k = whole.lo(); k <= whole.hi(); ++k) {
            std::size_t sum = 0;
            for (std::size_t x = 0; x < c.base().size(); ++x) sum += reduced_cech(c, {}, {x}).rank(k);
            ASSERT_EQ(whole.rank(k), sum);
        }
        ASSERT_EQ(is_exact(whole), is_finitistic(c).holds());
    }
}

TEST(Cech, NonSurjectiveCoverRejected) {
    const Cover c = Cover::from_fibres({{1, 0}}, 2);
    EXPECT_FALSE(c.surjective());
    EXPECT_THROW(is_finitistic(c), InputError);
    EXPECT_THROW(Cover::from_fibres({{1}}, 2), InputError);
}

TEST(Cech, GridChecksPass) {
    for (auto& w : check_cech_grid({2, 2, 3})) EXPECT_TRUE(w.ok()) << w.to_json().dump();
    Rng rng(76);
    EXPECT_TRUE(check_full_exactness(5, 2, 2, rng).ok());
}

// ---- total complexes -------------------------------------------------------

namespace {

DoubleComplex unit_square(long corner) {
    DoubleComplex dc;
    dc.ranks = {{1, 1}, {1, 1}};
    dc.horizontal[{0, 0}] = ZMatrix::from_rows({{1}});
    dc.horizontal[{0, 1}] = ZMatrix::from_rows({{corner}});
    dc.vertical[{0, 0}] = ZMatrix::from_rows({{1}});
    dc.vertical[{1, 0}] = ZMatrix::from_rows({{1}});
    return dc;
}

}  // namespace

TEST(TotalComplex, SignMakesCommutingSquaresComplexes) {
    const ChainComplex t = total_complex(unit_square(1));
    EXPECT_EQ(t.lo(), 0);
    EXPECT_EQ(t.rank(1), 2u);
    EXPECT_TRUE(is_exact(t));
    // an anticommuting square is not a double complex in this convention
    EXPECT_THROW(total_complex(unit_square(-1)), InputError);
}

TEST(TotalComplex, TensorOfComplexesKunneth) {
    Rng rng(77);
    for (int s = 0; s < 20; ++s) {
        const ChainComplex a = random_complex(rng, 0, 1).first, b = random_complex(rng, 0, 1).first;
        const ChainComplex t = total_complex(tensor_double(a, b));
        for (int k = t.lo(); k <= t.hi(); ++k) {
            std::size_t want = 0;
            for (int i = a.lo(); i <= a.hi(); ++i) want += a.rank(i) * b.rank(k - i);
            ASSERT_EQ(t.rank(k), want);
        }
        // Euler characteristics multiply
        Integer ea = 0, eb = 0, et = 0;
        for (int i = a.lo(); i <= a.hi(); ++i) ea += (i % 2 ? -1 : 1) * static_cast<long>(a.rank(i));
        for (int i = b.lo(); i <= b.hi(); ++i) eb += (i % 2 ? -1 : 1) * static_cast<long>(b.rank(i));
        for (int i = t.lo(); i <= t.hi(); ++i) et += (i % 2 ? -1 : 1) * static_cast<long>(t.rank(i));
        ASSERT_EQ(et, ea * eb);
    }
    Rng rng2(78);
    EXPECT_TRUE(check_total_complexes(20, rng2).ok());
}

// ---- transitive actions ----------------------------------------------------

TEST(Transitive, SmallExamples) {
    const auto trivial = transitive_kernel(GroupAction(1, {Permutation::identity(1)}), BaseRing::integers());
    EXPECT_TRUE(trivial.holds());
    EXPECT_EQ(trivial.q, ZMatrix(1, 1));

    const GroupAction swap = GroupAction::generated(2, {perm({1, 0})});
    const auto q = difference_matrix(swap);
    EXPECT_EQ(q.rows(), 4u);
    EXPECT_EQ(q.cols(), 2u);
    for (auto& r : {BaseRing::integers(), BaseRing::prime_field(2), BaseRing::rationals()}) {
        const auto tk = transitive_kernel(swap, r);
        EXPECT_TRUE(tk.holds()) << r.describe();
        EXPECT_EQ(tk.kernel_rank, 1u);
    }
    EXPECT_EQ(transitive_kernel(swap, BaseRing::integers()).integer_factors, std::vector<Integer>{1});

    const GroupAction s3 = GroupAction::generated(3, {perm({1, 0, 2}), perm({1, 2, 0})});
    const auto tk = transitive_kernel(s3, BaseRing::integers());
    EXPECT_EQ(tk.q.rows(), 18u);
    EXPECT_TRUE(tk.holds());
    EXPECT_EQ(tk.image_rank, 2u);
    EXPECT_EQ(tk.cokernel_free_rank, 16u);

    const GroupAction fixes = GroupAction::generated(3, {perm({1, 0, 2})});
    EXPECT_THROW(transitive_kernel(fixes, BaseRing::integers()), InputError);
    EXPECT_THROW(transitive_kernel(swap, BaseRing::poly(BaseRing::integers(), {"t"})), InputError);
    EXPECT_THROW(GroupAction(2, {perm({1, 0})}), InputError);
}

TEST(Transitive, EnumerationAndKernels) {
    // transitive subgroups of S_1..S_4: 1 + 1 + 2 + 9
    EXPECT_EQ(transitive_actions(4, 24).size(), 13u);
    for (auto& w : check_transitive_kernels(4, 24)) EXPECT_TRUE(w.ok()) << w.to_json().dump();
}
