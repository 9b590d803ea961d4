#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "nilcps/complexity.hpp"

using namespace nilcps;
using nilcps::testing::Gen;

namespace {
std::int64_t sampler_classes(const SchemeSpec& s, const Rational& r, const Rational& R) {
    PatchSampler ps(s, R, r);
    std::set<PatchClassKey> keys;
    for (const auto& c : ps.centres()) keys.insert(ps.key(c));
    return std::int64_t(keys.size());
}
}  // namespace

TEST(Census, SlabRouteMatchesPatchRoute) {
    // acceptance-domain keys against explicit patch comparison
    struct Case {
        const char* scheme;
        long r_num, r_den, R;
    };
    for (auto c : {Case{"fibonacci", 4, 1, 40}, Case{"fibonacci", 9, 1, 80}, Case{"planar", 2, 1, 10},
                   Case{"cubic-plane", 8, 1, 32}, Case{"heisenberg", 3, 2, 5}}) {
        SCOPED_TRACE(c.scheme);
        auto s = nilcps::testing::bundled(c.scheme);
        Rational r(c.r_num, c.r_den), R(c.R);
        auto census = complexity_census(s, r, R);
        EXPECT_EQ(census.p_hat, sampler_classes(s, r, R));
        EXPECT_LE(census.p_hat, census.p_hat_doubled);
    }
}

TEST(Census, ConsistencyHasNoMismatches) {
    for (const char* n : {"fibonacci", "planar", "heisenberg"}) {
        SCOPED_TRACE(n);
        auto s = nilcps::testing::bundled(n);
        Rational r(2), R(n == std::string("heisenberg") ? 4 : 20);
        PatchSampler ps(s, R, r);
        auto rep = check_census_consistency(s, ps, slab(s, r));
        EXPECT_GT(rep.points, 0);
        EXPECT_EQ(rep.partition_mismatches, 0);
        EXPECT_EQ(rep.tiling_failures, 0);
    }
}

TEST(Census, PatchOutsideSampleRadiusThrows) {
    auto s = nilcps::testing::bundled("fibonacci");
    PatchSampler ps(s, Rational(10), Rational(2));
    auto far = model_set(s, Rational(30));
    for (const auto& p : far)
        if (!norm_less(s.g, p.g_part, Rational(10))) {
            EXPECT_THROW(ps.patch(p), InsufficientRadius);
            break;
        }
}

TEST(AcceptanceDomains, WitnessAndSeparation) {
    auto s = nilcps::testing::bundled("fibonacci");
    Rational r(5);
    auto sl = slab(s, r);
    PatchSampler ps(s, Rational(40), r);
    const auto& cs = ps.centres();
    for (std::size_t i = 0; i < cs.size(); i += 3) {
        auto dom = acceptance_domain(s, sl, cs[i]);
        EXPECT_TRUE(dom.contains(s, cs[i].h_part));
        for (std::size_t j = 0; j < cs.size(); j += 5)
            EXPECT_EQ(dom.contains(s, cs[j].h_part), ps.key(cs[i]) == ps.key(cs[j]));
    }
}

TEST(WindowGeometry, BallPolytopeMatchesNorm) {
    auto h = GroupSpec::heisenberg();
    Gen g(51);
    for (int it = 0; it < 300; ++it) {
        auto c = g.point(3), x = g.point(3);
        Rational rho(g.integer(1, 12), 2);
        auto B = ball_polytope(h, c, rho);
        auto d = bch_multiply(h, x, inverse(c));
        double n = quasi_norm(h, d);
        if (std::abs(n - rho.get_d()) > 1e-9) EXPECT_EQ(B.contains_closed(x), n < rho.get_d());
    }
}

TEST(WindowGeometry, SquareWindowParameters) {
    auto s = nilcps::testing::bundled("planar");
    auto wp = window_parameters(s);
    EXPECT_EQ(wp.c_W, (GroupPoint{0, 0}));
    EXPECT_EQ(wp.I_W, Rational(1, 2));
    EXPECT_DOUBLE_EQ(wp.O_W, 0.5);
    EXPECT_EQ(wp.family.size(), 2u);
    ASSERT_EQ(wp.p_i.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(s.faces()[i].contains(wp.p_i[i]));
}

TEST(WindowGeometry, HeisenbergBoxWindow) {
    auto s = nilcps::testing::bundled("heisenberg");
    auto wp = window_parameters(s);
    EXPECT_EQ(wp.c_W, (GroupPoint{0, 0, 0}));
    // |x_1|, |x_2| <= rho and |x_3| <= rho^2 inside |x_i| <= 1/2, |x_3| <= 1/3
    EXPECT_EQ(wp.I_W, Rational(1, 2));
    EXPECT_NEAR(wp.O_W, std::sqrt(1.0 / 3.0), 1e-12);
    EXPECT_GT(wp.F_W, 0.0);
    EXPECT_EQ(wp.family.size(), 3u);
}

TEST(GoodPair, SearchResultVerifies) {
    for (const char* n : {"fibonacci", "planar", "heisenberg"}) {
        SCOPED_TRACE(n);
        auto s = nilcps::testing::bundled(n);
        auto wp = window_parameters(s);
        GoodPairOptions opt;
        opt.samples = 500;
        auto gp = good_pair_search(s, wp, opt);
        EXPECT_LT(gp.k, gp.h);
        EXPECT_LE(gp.h, wp.I_W);
        EXPECT_EQ(verify_good_pair(s, wp, gp.k, gp.h, opt), "");
        EXPECT_LE(gp.distortion_sampled, gp.distortion_bound + 1e-12);
    }
}

TEST(GoodPair, OversizedRadiusIsRejected) {
    auto s = nilcps::testing::bundled("planar");
    auto wp = window_parameters(s);
    EXPECT_NE(verify_good_pair(s, wp, Rational(1, 4), Rational(1)), "");
}

TEST(Cuts, CentralFaceCutsInnerBall) {
    auto s = nilcps::testing::bundled("planar");
    auto B = ball_polytope(s.h, GroupPoint{0, 0}, Rational(1, 4));
    // moving face x <= 1/2 to x <= 0 by the shift (-1/2, 0)
    GroupPoint shift{ExactScalar(Rational(-1, 2)), 0};
    EXPECT_TRUE(cuts_fully(s, shift, 0, B));
    EXPECT_TRUE(cuts_all_round(s, shift, 0, B));
    EXPECT_FALSE(cuts_fully(s, GroupPoint{0, 0}, 0, B));  // face misses the ball
}

TEST(Bounds, SandwichOnAbelianSchemes) {
    for (const char* n : {"fibonacci", "planar"}) {
        SCOPED_TRACE(n);
        auto s = nilcps::testing::bundled(n);
        auto wp = window_parameters(s);
        GoodPairOptions opt;
        opt.samples = 500;
        auto gp = good_pair_search(s, wp, opt);
        for (long r : {2L, 4L}) {
            auto sl = slab(s, Rational(r));
            CensusResult c;
            for (Rational R(8 * r);; R *= 2) {
                c = complexity_census(s, sl, R);
                if (c.saturated) break;
            }
            auto ub = upper_bound_regions(s, sl);
            auto lb = lower_bound_regions(s, wp, Rational(r), gp);
            EXPECT_LE(lb.regions, c.p_hat);
            EXPECT_LE(c.p_hat, ub.regions);
            EXPECT_LE(mpz_class(ub.regions), schlafli_bound(ub.planes, s.h.dim()));
        }
    }
}

TEST(Fit, RecoversExactPowerLaw) {
    std::vector<std::pair<double, double>> pts;
    for (double r : {1.0, 2.0, 4.0, 8.0}) pts.push_back({r, 3.0 * std::pow(r, 2.5)});
    auto f = exponent_fit(pts);
    EXPECT_NEAR(f.slope, 2.5, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(f.residual, 0.0, 1e-12);
    EXPECT_THROW(exponent_fit({{1.0, 1.0}}), std::invalid_argument);
}
