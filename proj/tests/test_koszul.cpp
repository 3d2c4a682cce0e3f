#include <gtest/gtest.h>

#include "qtorus/koszul.hpp"
#include "support.hpp"

using namespace qtorus;
using qtorus::testing::Rng;
using qtorus::testing::uniform;

namespace {

RatMatrix zero2() { return {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}; }
ThetaMatrix generic2() { return ThetaMatrix(1, zero2(), {{{0, 1}, {-1, 0}}}); }
ThetaMatrix root3() { return ThetaMatrix(3, {{Rational(0), Rational(1, 3)}, {Rational(-1, 3), Rational(0)}}, {}); }

MultiIndex idx(std::initializer_list<long long> v) {
    MultiIndex g(static_cast<int>(v.size()));
    std::size_t i = 0;
    for (auto x : v) g[i++] = x;
    return g;
}

KoszulElement basis_element(const ThetaMatrix& ctx, const MultiIndex& a, const WedgeIndex& I, const MultiIndex& b,
                            const CoeffScalar& c) {
    KoszulElement e(ctx, static_cast<int>(I.size()));
    e.add_term(a, I, b, c);
    return e;
}

KoszulElement random_koszul(Rng& rng, const ThetaMatrix& ctx, int p) {
    KoszulElement e(ctx, p);
    auto basis = wedge_basis(ctx.n(), p);
    int terms = static_cast<int>(uniform(rng, 1, 4));
    for (int t = 0; t < terms; ++t)
        e.add_term(qtorus::testing::random_index(rng, ctx.n(), 2),
                   basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(basis.size()) - 1))],
                   qtorus::testing::random_index(rng, ctx.n(), 2), qtorus::testing::random_unit_scalar(rng, ctx));
    return e;
}

// Independent route to the induced differential: apply the Koszul differential to
// 1 (x) e_I (x) 1 and contract with x^nu through x (x) (a (x) v (x) b) -> b x sigma(a),
// using only multiply and apply_automorphism.
FieldMatrix contracted_differential(const ThetaMatrix& ctx, const ScalingAutomorphism& sigma, const MultiIndex& gamma,
                                    int p) {
    const int n = ctx.n();
    auto rows = wedge_basis(n, p - 1), cols = wedge_basis(n, p);
    FieldMatrix m(rows.size(), std::vector<CoeffScalar>(cols.size(), CoeffScalar::zero(ctx.field())));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        MultiIndex nu = gamma - cols[c].indicator(n);
        KoszulElement de = koszul_differential(
            ctx, basis_element(ctx, MultiIndex(n), cols[c], MultiIndex(n), CoeffScalar::one(ctx.field())));
        for (const auto& [key, coef] : de.terms()) {
            const auto& [a, J, b] = key;
            QLaurent img = multiply(ctx, multiply(ctx, QLaurent::monomial(ctx, b), QLaurent::monomial(ctx, nu)),
                                    apply_automorphism(ctx, sigma, QLaurent::monomial(ctx, a)));
            std::size_t r = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), J) - rows.begin());
            MultiIndex target = gamma - J.indicator(n);
            EXPECT_EQ(img.size(), 1u);
            m[r][c] += coef * img.coefficient(target);
        }
    }
    return m;
}

}  // namespace

TEST(Wedge, BasisIsLexAndBinomial) {
    auto b = wedge_basis(4, 2);
    ASSERT_EQ(b.size(), 6u);
    EXPECT_EQ(b[0].to_string(), "e1e2");
    EXPECT_EQ(b[5].to_string(), "e3e4");
    for (int n = 0; n <= 5; ++n)
        for (int p = 0; p <= n; ++p) EXPECT_EQ(static_cast<long long>(wedge_basis(n, p).size()), binomial(n, p));
    EXPECT_THROW(WedgeIndex({2, 1}), std::invalid_argument);
}

TEST(KoszulDifferential, DegreeOneN1) {
    ThetaMatrix ctx = ThetaMatrix::commutative(1);
    FieldSpec f = ctx.field();
    KoszulElement d = koszul_differential(ctx, basis_element(ctx, idx({0}), WedgeIndex({0}), idx({0}), CoeffScalar::one(f)));
    KoszulElement expect(ctx, 0);
    expect.add_term(idx({1}), WedgeIndex(), idx({0}), CoeffScalar::one(f));
    expect.add_term(idx({0}), WedgeIndex(), idx({1}), CoeffScalar(f, -1));
    EXPECT_EQ(d, expect);
}

TEST(KoszulDifferential, DegreeTwoN2) {
    Rng rng(31);
    for (ThetaMatrix ctx : {generic2(), root3(), qtorus::testing::random_context(rng, 2)}) {
        FieldSpec f = ctx.field();
        CoeffScalar one = CoeffScalar::one(f), q12 = angle_to_scalar(ctx.theta(0, 1), ctx);
        KoszulElement d =
            koszul_differential(ctx, basis_element(ctx, idx({0, 0}), WedgeIndex({0, 1}), idx({0, 0}), one));
        KoszulElement expect(ctx, 1);
        expect.add_term(idx({1, 0}), WedgeIndex({1}), idx({0, 0}), one);
        expect.add_term(idx({0, 0}), WedgeIndex({1}), idx({1, 0}), -q12);
        expect.add_term(idx({0, 1}), WedgeIndex({0}), idx({0, 0}), -q12);
        expect.add_term(idx({0, 0}), WedgeIndex({0}), idx({0, 1}), one);
        EXPECT_EQ(d, expect) << d.to_string();
    }
}

TEST(KoszulDifferential, CommutativeIsClassical) {
    ThetaMatrix ctx = ThetaMatrix::commutative(2);
    FieldSpec f = ctx.field();
    CoeffScalar one = CoeffScalar::one(f);
    KoszulElement d = koszul_differential(ctx, basis_element(ctx, idx({0, 0}), WedgeIndex({0, 1}), idx({0, 0}), one));
    for (const auto& [k, c] : d.terms()) EXPECT_TRUE(c.is_one() || (-c).is_one());
    EXPECT_EQ(d.terms().size(), 4u);
}

TEST(KoszulDifferential, DegreeZeroThrows) {
    ThetaMatrix ctx = generic2();
    EXPECT_THROW(koszul_differential(ctx, KoszulElement(ctx, 0)), std::invalid_argument);
    EXPECT_THROW(augmentation(ctx, KoszulElement(ctx, 1)), std::invalid_argument);
}

TEST(Augmentation, Examples) {
    ThetaMatrix ctx = generic2();
    FieldSpec f = ctx.field();
    CoeffScalar one = CoeffScalar::one(f);
    EXPECT_EQ(augmentation(ctx, basis_element(ctx, idx({0, 0}), WedgeIndex(), idx({0, 0}), one)), QLaurent::one(ctx));
    EXPECT_EQ(augmentation(ctx, basis_element(ctx, idx({1, 0}), WedgeIndex(), idx({0, 1}), one)),
              QLaurent::monomial(ctx, idx({1, 1})));
    EXPECT_EQ(augmentation(ctx, basis_element(ctx, idx({0, 1}), WedgeIndex(), idx({1, 0}), one)),
              QLaurent::monomial(ctx, idx({1, 1}), angle_to_scalar(ctx.theta(1, 0), ctx)));
}

TEST(KoszulDifferential, SquaresToZeroAndAugments) {
    Rng rng(32);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
            for (int p = 1; p <= n; ++p) {
                KoszulElement e = random_koszul(rng, ctx, p);
                KoszulElement de = koszul_differential(ctx, e);
                if (p >= 2) EXPECT_TRUE(koszul_differential(ctx, de).is_zero());
                if (p == 1) EXPECT_TRUE(augmentation(ctx, de).is_zero());
            }
        }
}

TEST(KoszulDifferential, PreservesTotalMode) {
    Rng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        int p = static_cast<int>(uniform(rng, 1, n));
        KoszulElement e(ctx, p);
        auto basis = wedge_basis(n, p);
        MultiIndex a = qtorus::testing::random_index(rng, n, 2), b = qtorus::testing::random_index(rng, n, 2);
        e.add_term(a, basis[0], b, CoeffScalar::one(ctx.field()));
        MultiIndex mode = total_mode(e.terms().begin()->first);
        KoszulElement de = koszul_differential(ctx, e);
        for (const auto& [key, c] : de.terms()) EXPECT_EQ(total_mode(key), mode);
    }
}

TEST(ModeScalars, Examples) {
    ThetaMatrix comm = ThetaMatrix::commutative(3);
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial)
        for (const auto& l : mode_scalars(comm, ScalingAutomorphism::identity(comm), qtorus::testing::random_index(rng, 3, 3)))
            EXPECT_TRUE(l.is_zero());
    ThetaMatrix ctx = generic2();
    auto id = ScalingAutomorphism::identity(ctx);
    for (const auto& l : mode_scalars(ctx, id, idx({0, 0}))) EXPECT_TRUE(l.is_zero());
    auto l = mode_scalars(ctx, id, idx({1, 0}));
    EXPECT_TRUE(l[0].is_zero());
    FieldSpec f = ctx.field();
    CoeffScalar u = CoeffScalar::monomial(f, 0, {1});
    // x^{(1,-1)} x_2 - x_2 x^{(1,-1)} = (1 - q_21) x^{(1,0)} with q_21 = u^{-1}
    EXPECT_FALSE(l[1].is_zero());
    EXPECT_EQ(l[1], CoeffScalar::one(f) - u.inverse());
}

TEST(ModeScalars, VanishExactlyOnTheModeAngleLocus) {
    Rng rng(35);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
        MultiIndex g = qtorus::testing::random_index(rng, n, 3);
        auto lam = mode_scalars(ctx, sigma, g);
        auto kap = comode_scalars(ctx, sigma, g);
        for (int j = 0; j < n; ++j) {
            bool trivial = mode_angle(ctx, sigma, g, j).is_trivial();
            EXPECT_EQ(lam[static_cast<std::size_t>(j)].is_zero(), trivial);
            EXPECT_EQ(kap[static_cast<std::size_t>(j)].is_zero(), trivial);
        }
    }
}

TEST(PerModeReduction, InducedMatchesContraction) {
    Rng rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
        MultiIndex g = qtorus::testing::random_index(rng, n, 3);
        for (int p = 1; p <= n; ++p) EXPECT_EQ(induced_differential(ctx, sigma, g, p), contracted_differential(ctx, sigma, g, p));
    }
}

TEST(PerModeReduction, RescaledInducedIsScalarKoszul) {
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        ScalingAutomorphism sigma = uniform(rng, 0, 2) == 0 ? ScalingAutomorphism::identity(ctx)
                                                            : qtorus::testing::random_scaling(rng, ctx);
        MultiIndex g = qtorus::testing::random_index(rng, n, 3);
        auto lam = mode_scalars(ctx, sigma, g);
        for (int p = 1; p <= n; ++p)
            EXPECT_EQ(rescaled_differential(ctx, sigma, g, p), scalar_koszul_matrix(ctx.field(), lam, p));
    }
}

TEST(PerModeReduction, CodifferentialIsDualScalarKoszul) {
    Rng rng(38);
    for (int trial = 0; trial < 60; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 4));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
        MultiIndex mu = qtorus::testing::random_index(rng, n, 3);
        auto kap = comode_scalars(ctx, sigma, mu);
        for (int p = 0; p < n; ++p) {
            FieldMatrix k = scalar_koszul_matrix(ctx.field(), kap, p + 1);  // (p) x (p+1)
            FieldMatrix delta = induced_codifferential(ctx, sigma, mu, p);   // (p+1) x (p)
            ASSERT_EQ(delta.size(), k.empty() ? 0 : k[0].size());
            for (std::size_t r = 0; r < delta.size(); ++r)
                for (std::size_t c = 0; c < delta[r].size(); ++c) EXPECT_EQ(delta[r][c], k[c][r]);
        }
    }
}

TEST(PerModeReduction, FieldDichotomy) {
    Rng rng(39);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
        ModeSet ms = ModeSet::vanishing_locus(ctx, sigma);
        ModeSet::for_each_in_box(n, 2, [&](const MultiIndex& g) {
            auto h = mode_homology_dims(ctx, sigma, g);
            auto c = mode_cohomology_dims(ctx, sigma, g);
            for (int p = 0; p <= n; ++p) {
                long long expect = ms.contains(g) ? binomial(n, p) : 0;
                EXPECT_EQ(h[static_cast<std::size_t>(p)], expect);
                EXPECT_EQ(c[static_cast<std::size_t>(p)], expect);
            }
        });
    }
}

TEST(HochschildHomology, CommutativeIsFullLattice) {
    for (int n = 1; n <= 3; ++n) {
        ThetaMatrix ctx = ThetaMatrix::commutative(n);
        HomologyTable t = hochschild_homology(ctx, ScalingAutomorphism::identity(ctx));
        ASSERT_EQ(static_cast<int>(t.degrees.size()), n + 1);
        for (const auto& d : t.degrees) {
            EXPECT_EQ(d.multiplicity, binomial(n, d.degree));
            EXPECT_TRUE(d.modes.is_full_lattice());
        }
    }
    ThetaMatrix c2 = ThetaMatrix::commutative(2);
    HomologyTable t = hochschild_homology(c2, ScalingAutomorphism::identity(c2));
    EXPECT_EQ(t.box_dimension(0, 2), 25);
    EXPECT_EQ(t.box_dimension(1, 2), 50);
    EXPECT_EQ(t.box_dimension(2, 2), 25);
}

TEST(HochschildHomology, GenericConcentratedAtZero) {
    ThetaMatrix ctx = generic2();
    HomologyTable t = hochschild_homology(ctx, ScalingAutomorphism::identity(ctx));
    for (const auto& d : t.degrees) {
        auto members = d.modes.members_in_box(5);
        ASSERT_EQ(members.size(), 1u);
        EXPECT_EQ(members[0], idx({0, 0}));
    }
    EXPECT_EQ(t.box_dimension(0, 2), 1);
    EXPECT_EQ(t.box_dimension(1, 2), 2);
    EXPECT_EQ(t.box_dimension(2, 2), 1);
}

TEST(HochschildHomology, RootOfUnityCongruence) {
    ThetaMatrix ctx = root3();
    HomologyTable t = hochschild_homology(ctx, ScalingAutomorphism::identity(ctx));
    for (const auto& d : t.degrees)
        ModeSet::for_each_in_box(2, 4, [&](const MultiIndex& g) {
            EXPECT_EQ(d.modes.contains(g), g[0] % 3 == 0 && g[1] % 3 == 0) << g.to_string();
        });
    EXPECT_EQ(t.box_dimension(0, 3), 9);
    EXPECT_EQ(t.degrees[0].modes.to_string(), "{g in Z^2 : g1 = 0 (mod 3), g2 = 0 (mod 3)}");
}

TEST(HochschildHomology, TwistedModeSetIsAffine) {
    ThetaMatrix ctx = generic2();
    HomologyTable t = hochschild_homology(ctx, ScalingAutomorphism::koszul_alpha(ctx));
    auto members = t.degrees[2].modes.members_in_box(4);
    ASSERT_EQ(members.size(), 1u);
    EXPECT_EQ(members[0], idx({0, -1}));
}

TEST(HochschildCohomology, CommutativeN1) {
    ThetaMatrix ctx = ThetaMatrix::commutative(1);
    HomologyTable t = hochschild_cohomology(ctx, ScalingAutomorphism::identity(ctx));
    EXPECT_EQ(t.direction, Direction::cohomology);
    for (const auto& d : t.degrees) {
        EXPECT_EQ(d.multiplicity, 1);
        EXPECT_TRUE(d.modes.is_full_lattice());
    }
}

TEST(HochschildCohomology, GenericMatchesTwistedHomologyThroughDuality) {
    ThetaMatrix ctx = generic2();
    auto id = ScalingAutomorphism::identity(ctx), alpha = ScalingAutomorphism::koszul_alpha(ctx);
    HomologyTable co = hochschild_cohomology(ctx, id);
    HomologyTable ho = hochschild_homology(ctx, alpha);
    for (int i = 0; i <= 2; ++i) EXPECT_EQ(co.box_dimension(i, 3), ho.box_dimension(2 - i, 3));
}

TEST(HochschildCohomology, TopDegreeWithInverseAlpha) {
    for (ThetaMatrix ctx : {ThetaMatrix::commutative(1), generic2(), root3()}) {
        HomologyTable t = hochschild_cohomology(ctx, ScalingAutomorphism::koszul_alpha(ctx).inverse());
        EXPECT_GT(t.box_dimension(ctx.n(), 2), 0);
    }
}

TEST(DualityCheck, Examples) {
    for (int n = 1; n <= 3; ++n) {
        ThetaMatrix ctx = ThetaMatrix::commutative(n);
        DualityReport r = duality_check(ctx, ScalingAutomorphism::identity(ctx), all_degrees(n), 1);
        EXPECT_TRUE(r.pass) << r.message;
    }
    for (ThetaMatrix ctx : {generic2(), root3()}) {
        DualityReport r = duality_check(ctx, ScalingAutomorphism::identity(ctx), all_degrees(2), 3);
        EXPECT_TRUE(r.pass) << r.message;
        ASSERT_TRUE(r.shift.has_value());
    }
}

TEST(DualityCheck, AlphaIsInnerForNAtMostTwo) {
    Rng rng(40);
    for (int trial = 0; trial < 20; ++trial) {
        int n = static_cast<int>(uniform(rng, 1, 2));
        ThetaMatrix ctx = qtorus::testing::random_context(rng, n);
        for (int k = 0; k < 3; ++k) {
            ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
            DualityReport r = duality_check(ctx, sigma, all_degrees(n), 2);
            EXPECT_TRUE(r.pass) << r.message;
        }
    }
}

TEST(DualityCheck, CalabiYauDualizingBimoduleForAllN) {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        ThetaMatrix ctx = qtorus::testing::random_context(rng, 3);
        ScalingAutomorphism sigma = qtorus::testing::random_scaling(rng, ctx);
        DualityReport r = duality_check(ctx, sigma, all_degrees(3), ScalingAutomorphism::identity(ctx), 1);
        EXPECT_TRUE(r.pass) << r.message;
        EXPECT_EQ(*r.shift, MultiIndex(3));
    }
}

TEST(DualityCheck, AlphaFailsForGenericThreeTorus) {
    // theta = sum of the three elementary skew forms with independent irrationals
    IntMatrix e12 = {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, e13 = {{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}},
              e23 = {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}};
    RatMatrix z(3, std::vector<Rational>(3, Rational(0)));
    ThetaMatrix ctx(1, z, {e12, e13, e23});
    DualityReport r = duality_check(ctx, ScalingAutomorphism::identity(ctx), all_degrees(3), 2);
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_FALSE(r.shift.has_value());
}
