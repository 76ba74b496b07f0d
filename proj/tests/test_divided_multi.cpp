#include "symalg/symalg.hpp"

#include <gtest/gtest.h>

using namespace symalg;

namespace {

const BaseRing zz = BaseRing::integers();
const std::vector<std::string> e12{"e1", "e2"};

Scalar Z(long v) { return from_int(zz, v); }

DividedElement single(const std::vector<std::string>& labels, const Exponents& m, long c = 1) {
    DividedElement u(zz, labels, multiset_size(m));
    u.add_term(m, Z(c));
    return u;
}

Coords random_coords(std::size_t r, Rng& rng) {
    Coords c;
    for (std::size_t i = 0; i < r; ++i) c.push_back(random_scalar(zz, rng));
    return c;
}

MultTableAlgebra gaussian() { return monic_quotient(zz, {Z(1), Z(0)}, "i"); }
MultTableAlgebra cubic() { return monic_quotient(zz, {Z(-1), Z(-1), Z(0)}, "x"); }

}  // namespace

// ---- divided powers ---------------------------------------------------------

TEST(Gamma, Examples) {
    EXPECT_EQ(gamma_of(zz, e12, {Z(1), Z(0)}, 1), single(e12, {1, 0}));
    EXPECT_EQ(gamma_of(zz, e12, {Z(5), Z(-2)}, 0), divided_unit(zz, e12));
    EXPECT_EQ(gamma_of(zz, e12, {Z(1), Z(1)}, 2), single(e12, {2, 0}) + single(e12, {1, 1}) + single(e12, {0, 2}));
    // gamma_2(3 e1 - e2) = 9 [2,0] - 3 [1,1] + [0,2]
    EXPECT_EQ(gamma_of(zz, e12, {Z(3), Z(-1)}, 2), single(e12, {2, 0}, 9) + single(e12, {1, 1}, -3) + single(e12, {0, 2}));
    EXPECT_EQ(star_mul(single(e12, {1, 0}), single(e12, {1, 0})), single(e12, {2, 0}, 2));
    EXPECT_EQ(star_mul(divided_unit(zz, e12), single(e12, {1, 2})), single(e12, {1, 2}));
    EXPECT_THROW(gamma_of(zz, e12, {Z(1)}, 2), InputError);
}

TEST(Gamma, DefiningRelations) {
    Rng rng(51);
    for (std::size_t r = 1; r <= 3; ++r) {
        const auto labels = numbered("e", r);
        for (int s = 0; s < 15; ++s) {
            const Coords x = random_coords(r, rng), y = random_coords(r, rng);
            const Scalar a = random_scalar(zz, rng);
            const std::size_t d = rng.below(4), e = rng.below(4);
            ASSERT_EQ(gamma_of(zz, labels, x, 0), divided_unit(zz, labels));
            Coords ax;
            for (auto& c : x) ax.push_back(a * c);
            ASSERT_EQ(gamma_of(zz, labels, ax, d), pow(a, d) * gamma_of(zz, labels, x, d));
            Coords xy;
            for (std::size_t i = 0; i < r; ++i) xy.push_back(x[i] + y[i]);
            DividedElement expand(zz, labels, d);
            for (std::size_t i = 0; i <= d; ++i)
                expand = expand + star_mul(gamma_of(zz, labels, x, i), gamma_of(zz, labels, y, d - i));
            ASSERT_EQ(gamma_of(zz, labels, xy, d), expand);
            ASSERT_EQ(star_mul(gamma_of(zz, labels, x, d), gamma_of(zz, labels, x, e)),
                      from_int(zz, binomial(static_cast<long>(d + e), static_cast<long>(d))) * gamma_of(zz, labels, x, d + e));
        }
    }
}

TEST(Gamma, StarProductIsCommutativeAndAssociative) {
    Rng rng(52);
    const auto labels = numbered("e", 2);
    for (int s = 0; s < 20; ++s) {
        const auto u = gamma_of(zz, labels, random_coords(2, rng), rng.below(3));
        const auto v = gamma_of(zz, labels, random_coords(2, rng), rng.below(3));
        const auto w = gamma_of(zz, labels, random_coords(2, rng), rng.below(3));
        ASSERT_EQ(star_mul(u, v), star_mul(v, u));
        ASSERT_EQ(star_mul(star_mul(u, v), w), star_mul(u, star_mul(v, w)));
    }
}

TEST(GammaCompare, GammaOfXGoesToTheTensorPower) {
    Rng rng(53);
    const auto b = cubic();
    for (std::size_t d = 0; d <= 4; ++d)
        for (int s = 0; s < 5; ++s) {
            const Scalar x = random_element(b, rng);
            const auto g = gamma_of(zz, b.labels(), x.coords(), d);
            ASSERT_EQ(gamma_compare(g, b).tensor(), d ? pure_tensor(b, std::vector<Scalar>(d, x)) : unit_tensor(b, 0));
            ASSERT_EQ(gamma_compare_inverse(gamma_compare_tensor(g, b)), g);
        }
}

TEST(GammaCompare, BasisGoesToOrbitSums) {
    const auto split = split_algebra(zz, e12);
    const auto t = gamma_compare(single(e12, {1, 1})).tensor();
    EXPECT_EQ(t, pure_tensor(split, {split.basis(0), split.basis(1)}) + pure_tensor(split, {split.basis(1), split.basis(0)}));
    EXPECT_THROW(gamma_compare_inverse(pure_tensor(split, {split.basis(0), split.basis(1)})), InputError);
    EXPECT_THROW(gamma_compare_tensor(single(e12, {1, 1}), cubic()), RingMismatch);
}

TEST(GammaCompare, TransportedProductOfPowers) {
    Rng rng(54);
    const auto b = gaussian();
    for (int s = 0; s < 10; ++s) {
        const Scalar x = random_element(b, rng), y = random_element(b, rng);
        ASSERT_EQ(transported_mul(gamma_of(zz, b.labels(), x.coords(), 3), gamma_of(zz, b.labels(), y.coords(), 3), b),
                  gamma_of(zz, b.labels(), (x * y).coords(), 3));
    }
}

TEST(ThetaDiv, IsTheDeterminant) {
    Rng rng(55);
    const auto g = gaussian();
    EXPECT_EQ(theta_div(gamma_of(zz, g.labels(), g.basis(1).coords(), 2), regular_triple(g)), Z(1));
    for (std::size_t r = 1; r <= 4; ++r) {
        const auto b = random_monic_quotient(zz, r, rng);
        const GoodTriple t = regular_triple(b);
        for (int s = 0; s < 5; ++s) {
            const Scalar x = random_element(b, rng);
            ASSERT_EQ(theta_div(gamma_of(zz, b.labels(), x.coords(), r), t), det(zz, mult_matrix(x, t)));
        }
    }
    EXPECT_THROW(theta_div(gamma_of(zz, g.labels(), g.basis(1).coords(), 3), regular_triple(g)), InputError);
}

TEST(DividedMaps, SigmaSplitsPowers) {
    Rng rng(56);
    const auto labels = numbered("e", 2);
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 2; ++n) {
            const Coords x = random_coords(2, rng);
            std::map<std::pair<Exponents, Exponents>, Scalar> want;
            const auto gm = gamma_of(zz, labels, x, m), gn = gamma_of(zz, labels, x, n);
            for (auto& [a, ca] : gm.terms())
                for (auto& [b, cb] : gn.terms())
                    if (!(ca * cb).is_zero()) want.emplace(std::make_pair(a, b), ca * cb);
            ASSERT_EQ(sigma_div(gamma_of(zz, labels, x, m + n), m), want) << m << " " << n;
        }
    EXPECT_THROW(sigma_div(gamma_of(zz, labels, {Z(1), Z(1)}, 2), 3), InputError);
}

TEST(DividedMaps, TauNestsPowers) {
    Rng rng(57);
    const auto labels = numbered("e", 2);
    for (std::size_t m = 1; m <= 2; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            const Coords x = random_coords(2, rng);
            const auto inner_labels = numbered("g", multisets(2, n).size());
            const auto gn = gamma_of(zz, labels, x, n);
            Coords y;
            for (auto& d : multisets(2, n)) y.push_back(gn.coeff(d));
            ASSERT_EQ(tau_div(gamma_of(zz, labels, x, m * n), m, n, inner_labels), gamma_of(zz, inner_labels, y, m));
        }
    EXPECT_THROW(tau_div(gamma_of(zz, labels, {Z(1), Z(1)}, 3), 2, 2, numbered("g", 3)), InputError);
}

TEST(LawCheck, GaussianIntegers) {
    Rng rng(58);
    const auto g = gaussian();
    const auto homs = default_hom_family(zz, g.rank());
    EXPECT_EQ(homs.size(), 3u);
    EXPECT_TRUE(law_check(LawKind::Determinant, regular_triple(g), 2, homs, 10, rng).ok());
    EXPECT_TRUE(law_check(LawKind::TensorPower, regular_triple(g), 3, homs, 10, rng).ok());

    // det(t i) = t^2 over ZZ[t]
    const auto gt = base_change(g, RingHom::canonical(zz, BaseRing::poly(zz, {"t"})));
    const BaseRing& zt = gt.base();
    const Scalar t = variable(zt, "t");
    EXPECT_EQ(det(zt, mult_matrix(gt.lift(t) * gt.basis(1))), t * t);
}

// ---- multivalued morphisms -------------------------------------------------

namespace {

MultiMorphism mm(const FinSet& x, const FinSet& y, std::vector<std::vector<std::uint64_t>> rows) {
    MultiMorphism a(x, y);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) a.count(i, j) = rows[i][j];
    return a;
}

}  // namespace

TEST(Multi, AddAndCompose) {
    const FinSet X = FinSet::standard(1, "x"), Y = FinSet::standard(2, "y"), Z2 = FinSet::standard(2, "z");
    const auto alpha = mm(X, Y, {{1, 1}});
    const auto beta = mm(Y, Z2, {{1, 1}, {1, 1}});
    EXPECT_EQ(mv_compose(beta, alpha), mm(X, Z2, {{2, 2}}));
    EXPECT_EQ(mv_add(alpha, alpha), mm(X, Y, {{2, 2}}));
    EXPECT_EQ(mv_compose(beta, mv_identity(Y)), beta);
    EXPECT_EQ(mv_compose(mv_identity(Z2), beta), beta);
    EXPECT_EQ(mv_compose(beta, mv_zero(X, Y)), mv_zero(X, Z2));
    EXPECT_EQ(mv_add(alpha, mv_zero(X, Y)), alpha);
    EXPECT_THROW(mv_compose(alpha, beta), InputError);
    EXPECT_THROW(mv_add(alpha, beta), InputError);
}

TEST(Multi, TensorCountsMultiply) {
    Rng rng(61);
    const FinSet X1 = FinSet::standard(2, "a"), Y1 = FinSet::standard(3, "b"), X2 = FinSet::standard(2, "c"), Y2 = FinSet::standard(2, "d");
    for (int s = 0; s < 10; ++s) {
        const auto a1 = random_morphism(X1, Y1, 3, rng), a2 = random_morphism(X2, Y2, 3, rng);
        const auto t = mv_tensor(a1, a2);
        for (std::size_t x1 = 0; x1 < 2; ++x1)
            for (std::size_t x2 = 0; x2 < 2; ++x2)
                for (std::size_t y1 = 0; y1 < 3; ++y1)
                    for (std::size_t y2 = 0; y2 < 2; ++y2)
                        ASSERT_EQ(t.count(x1 * 2 + x2, y1 * 2 + y2), a1.count(x1, y1) * a2.count(x2, y2));
    }
}

TEST(Multi, Degrees) {
    const FinSet X = FinSet::standard(2, "x"), Y = FinSet::standard(2, "y");
    const auto f = mv_from_function(X, Y, {1, 1});
    EXPECT_EQ(f.degree(), 1u);
    EXPECT_EQ(mv_add(f, mv_add(f, f)).degree(), 3u);
    EXPECT_EQ(mv_compose(mm(Y, Y, {{2, 0}, {1, 1}}), mv_add(f, f)).degree(), 4u);
    EXPECT_EQ(mm(X, Y, {{1, 0}, {1, 1}}).degree(), std::nullopt);
    EXPECT_EQ(mv_zero(X, Y).degree(), 0u);
    EXPECT_THROW(mv_from_function(X, Y, {0, 2}), InputError);
}

TEST(Multi, LinearizationIsAFunctor) {
    Rng rng(62);
    const FinSet X = FinSet::standard(2, "x"), Y = FinSet::standard(3, "y"), W = FinSet::standard(2, "w");
    for (auto& ring : {zz, BaseRing::prime_field(5), BaseRing::rationals()})
        for (int s = 0; s < 10; ++s) {
            const auto a = random_morphism(X, Y, 3, rng), a2 = random_morphism(X, Y, 3, rng), b = random_morphism(Y, W, 3, rng);
            ASSERT_EQ(linearize(mv_compose(b, a), ring), lin_compose(linearize(b, ring), linearize(a, ring)));
            ASSERT_EQ(linearize(mv_add(a, a2), ring), lin_add(linearize(a, ring), linearize(a2, ring)));
            ASSERT_EQ(linearize(mv_tensor(a, b), ring), lin_tensor(linearize(a, ring), linearize(b, ring)));
            ASSERT_EQ(linearize(mv_identity(X), ring), linearize(mv_identity(X), ring));
        }
}

TEST(Multi, CorrespondencesRoundTrip) {
    Rng rng(63);
    const FinSet X = FinSet::standard(3, "x"), Y = FinSet::standard(2, "y");
    for (int s = 0; s < 20; ++s) {
        const auto a = random_morphism(X, Y, 4, rng);
        ASSERT_EQ(corr_to_mv(mv_to_corr(a)), a);
    }
    LinearMorphism neg(X, Y, zz);
    neg.set(0, 1, Z(-1));
    EXPECT_THROW(corr_to_mv(neg), InputError);
    EXPECT_THROW(corr_to_mv(linearize(mv_zero(X, Y), BaseRing::rationals())), InputError);
}

TEST(Multi, DecomposeAndMerge) {
    Rng rng(64);
    const FinSet X = FinSet::standard(4, "x"), Y = FinSet::standard(3, "y");
    const Partition xs{{0, 2}, {1}, {3}}, ys{{2, 0}, {1}};
    for (int s = 0; s < 10; ++s) {
        const auto a = random_morphism(X, Y, 3, rng);
        const auto d = decompose_hom(a, xs, ys);
        ASSERT_EQ(d.blocks.size(), 3u);
        ASSERT_EQ(d.blocks[0][0].count(1, 0), a.count(2, 2));
        ASSERT_EQ(merge_hom(d, X, Y), a);
    }
    EXPECT_THROW(decompose_hom(mv_zero(X, Y), {{0, 1}, {1, 2, 3}}, ys), InputError);
    EXPECT_THROW(decompose_hom(mv_zero(X, Y), {{0, 1}}, ys), InputError);
}

TEST(Multi, Transfer) {
    const GroupObject z2 = GroupObject::cyclic(2);
    const FinSet X = FinSet::standard(1, "x"), Y = FinSet::standard(1, "y");
    // two copies of a class of order 2 cancel
    EXPECT_EQ(transfer(z2, mm(X, Y, {{2}}), {1}), std::vector<std::size_t>{0});
    EXPECT_EQ(transfer(z2, mm(X, Y, {{3}}), {1}), std::vector<std::size_t>{1});
    const FinSet X3 = FinSet::standard(3, "x"), Y2 = FinSet::standard(2, "y");
    EXPECT_EQ(transfer(GroupObject::cyclic(4), mv_from_function(X3, Y2, {1, 0, 1}), {3, 2}), (std::vector<std::size_t>{2, 3, 2}));
    EXPECT_THROW(transfer(z2, mm(X, Y, {{1}}), {1, 0}), InputError);
    EXPECT_THROW(GroupObject(FinSet::standard(2, "g"), {0, 1, 1, 1}, 0, {0, 1}), InputError);
}

TEST(Multi, TransferIsFunctorial) {
    Rng rng(65);
    const FinSet X = FinSet::standard(2, "x"), Y = FinSet::standard(3, "y"), W = FinSet::standard(2, "w");
    for (auto& [name, g] : small_groups())
        for (int s = 0; s < 10; ++s) {
            const auto a = random_morphism(X, Y, 3, rng), b = random_morphism(Y, W, 3, rng);
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < W.size(); ++i) f.push_back(rng.below(g.size()));
            ASSERT_EQ(transfer(g, mv_compose(b, a), f), transfer(g, a, transfer(g, b, f))) << name;
            ASSERT_EQ(transfer(g, mv_identity(W), f), f);
        }
}

TEST(Multi, CategoryLaws) {
    Rng rng(66);
    const auto ws = verify_category_laws({1, 2}, 30, {3, 2}, rng);
    ASSERT_EQ(ws.size(), category_law_names().size());
    for (auto& w : ws) {
        EXPECT_TRUE(w.ok()) << w.to_json().dump();
        EXPECT_GT(w.checked, 0u);
    }
    EXPECT_TRUE(check_degree_multiplicativity({2, 2}).ok());
    EXPECT_TRUE(check_correspondences({2, 2}).ok());
    EXPECT_TRUE(check_transfer_functoriality({2, 2}).ok());
}

TEST(Multi, EnumerationCounts) {
    // each of |X| rows is a multiset of size <= d over |Y|: C(|Y|+d, d) choices
    const FinSet X = FinSet::standard(2, "x"), Y = FinSet::standard(2, "y");
    EXPECT_EQ(all_morphisms(X, Y, 2).size(), 36u);
    EXPECT_EQ(all_morphisms(FinSet::standard(1, "x"), FinSet::standard(3, "y"), 1).size(), 4u);
}
