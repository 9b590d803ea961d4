#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace nilcps;
using nilcps::testing::Gen;

namespace {
GroupPoint Q(std::initializer_list<Rational> v) {
    GroupPoint p;
    for (const auto& q : v) p.emplace_back(q);
    return p;
}
}  // namespace

TEST(Heisenberg, ProductOfGenerators) {
    auto h = GroupSpec::heisenberg();
    EXPECT_EQ(bch_multiply(h, make_point({1, 0, 0}), make_point({0, 1, 0})), Q({1, 1, Rational(1, 2)}));
    EXPECT_EQ(bch_multiply(h, make_point({0, 1, 0}), make_point({1, 0, 0})), Q({1, 1, Rational(-1, 2)}));
}

TEST(Heisenberg, KoranyiNormOfThreeFour) {
    auto h = GroupSpec::heisenberg(NormKind::Koranyi);
    EXPECT_DOUBLE_EQ(quasi_norm(h, make_point({3, 4, 0})), 5.0);
    // ((x^2+y^2)^2 + z^2)^(1/4)
    EXPECT_DOUBLE_EQ(quasi_norm(h, make_point({0, 0, 1})), 1.0);
    EXPECT_TRUE(ball_contains(h, Rational(5), make_point({0, 0, 0}), make_point({3, 4, -1})) == false);
    EXPECT_TRUE(ball_contains(h, Rational(5), make_point({0, 0, 0}), make_point({3, 3, 1})));
}

TEST(Heisenberg, WeightedMaxBallVolume) {
    // box [-r,r]^2 x [-r^2,r^2] in exponential coordinates
    auto h = GroupSpec::heisenberg();
    for (long r = 1; r <= 5; ++r) EXPECT_EQ(ball_volume(h, Rational(r)), Rational(8 * r * r * r * r));
    EXPECT_EQ(ball_volume(GroupSpec::abelian(2), Rational(3, 2)), Rational(9));
}

TEST(Heisenberg, MatrixChartIsUpperTriangularProduct) {
    auto h = GroupSpec::heisenberg();
    Gen g(21);
    for (int i = 0; i < 300; ++i) {
        auto a = g.point(3, true), b = g.point(3, true);
        // [[1,a1,a3],[0,1,a2],[0,0,1]] times the same for b
        GroupPoint m{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
        auto prod = bch_multiply(h, matrix_to_exp(a), matrix_to_exp(b));
        EXPECT_EQ(exp_to_matrix(prod), m);
        EXPECT_EQ(matrix_to_exp(exp_to_matrix(a)), a);
    }
}

TEST(GroupSpec, FiliformFailsValidation) {
    auto f = GroupSpec::filiform4();
    EXPECT_FALSE(f.is_two_step());
    EXPECT_FALSE(is_locally_two_step(f));
    EXPECT_THROW(f.validate(), ValidationError);
    EXPECT_TRUE(is_locally_two_step(GroupSpec::heisenberg()));
    EXPECT_TRUE(is_locally_two_step(GroupSpec::abelian(3)));
}

TEST(GroupSpec, RejectsBadWeights) {
    // [e1,e2] = e3 needs w3 = w1 + w2
    EXPECT_THROW(GroupSpec(3, {1, 1, 1}, {{0, 1, 2, 1}}).validate(), ValidationError);
    EXPECT_THROW(GroupSpec(2, {2, 1}, {}).validate(), ValidationError);
    EXPECT_EQ(GroupSpec::heisenberg().homdim(), Rational(4));
}

TEST(Hyperplanes, TranslationMapsPlaneToPlane) {
    auto h = GroupSpec::heisenberg();
    Gen g(22);
    for (int i = 0; i < 200; ++i) {
        HyperplaneH P({g.rational(), g.rational(), ExactScalar(g.integer(1, 3))}, g.rational());
        auto x = g.point(3);
        auto xP = act_on_hyperplane(h, x, P);
        // points of P: solve for the third coordinate
        GroupPoint p{g.rational(), g.rational(), 0};
        p[2] = (P.offset - P.normal[0] * p[0] - P.normal[1] * p[1]) / P.normal[2];
        ASSERT_TRUE(P.contains(p));
        EXPECT_TRUE(xP.contains(bch_multiply(h, x, p)));
    }
}

TEST(Hyperplanes, CanonicalFormIsScaleInvariant) {
    HyperplaneH P({ExactScalar(2), ExactScalar(-4)}, ExactScalar(6));
    HyperplaneH Q({ExactScalar(-1), ExactScalar(2)}, ExactScalar(-3));
    EXPECT_EQ(P.canonical(), Q.canonical());
    EXPECT_EQ(P.canonical().normal[0], ExactScalar(1));
}

TEST(BallContains, AgreesWithNorm) {
    auto h = GroupSpec::heisenberg();
    Gen g(23);
    for (int i = 0; i < 500; ++i) {
        auto x = g.point(3), c = g.point(3);
        Rational r = Rational(g.integer(1, 40), 4);
        auto d = bch_multiply(h, x, inverse(c));
        double n = quasi_norm(h, d);
        if (std::abs(n - r.get_d()) > 1e-9) EXPECT_EQ(ball_contains(h, r, c, x), n < r.get_d());
    }
}

TEST(Conjugation, DistortionOfIdentityIsEpsilon) {
    auto h = GroupSpec::heisenberg();
    EXPECT_NEAR(conjugation_distortion(h, identity(h), 0.25, 100), 0.25, 1e-12);
    // a x a^-1 = x + [a, x]; for a = (1,0,0), x = (0,t,0) the centre picks up t
    auto a = make_point({1, 0, 0});
    double m = max_conjugate_norm(h, a, {Q({0, Rational(1, 4), 0})});
    EXPECT_NEAR(m, 0.5, 1e-12);  // max(1/4, sqrt(1/4))
}
