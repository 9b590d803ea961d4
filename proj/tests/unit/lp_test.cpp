#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "nilcps/lp.hpp"

using namespace nilcps;
using nilcps::testing::Gen;

namespace {
Vec V(std::initializer_list<long> v) {
    Vec out;
    for (long x : v) out.emplace_back(x);
    return out;
}
Polytope unit_square() { return Polytope::box(V({0, 0}), V({1, 1})); }
}  // namespace

TEST(LP, MaximizesOverTheSquare) {
    Mat A;
    Vec b;
    unit_square().matrix(A, b);
    auto r = lp_maximize(A, b, V({1, 1}));
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, ExactScalar(2));
    EXPECT_EQ(r.x, V({1, 1}));
}

TEST(LP, DetectsInfeasibleAndUnbounded) {
    Mat A{V({1}), V({-1})};
    EXPECT_EQ(lp_maximize(A, V({-1, 0}), V({1})).status, LPStatus::Infeasible);
    Mat B{V({-1})};
    EXPECT_EQ(lp_maximize(B, V({0}), V({1})).status, LPStatus::Unbounded);
}

TEST(LP, LexicographicExtremes) {
    // triangle x >= 0, y >= 0, x + y <= 1
    Mat A{V({-1, 0}), V({0, -1}), V({1, 1})};
    Vec b = V({0, 0, 1});
    EXPECT_EQ(*lp_lexmin(A, b), V({0, 0}));
    EXPECT_EQ(*lp_lexmax(A, b), V({1, 0}));
}

TEST(LP, IrrationalCoefficients) {
    // x <= sqrt2, maximize x
    Mat A{Vec{ExactScalar::quadratic(2, 0, 1)}};
    auto r = lp_maximize(A, Vec{ExactScalar(2)}, V({1}));
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, ExactScalar::quadratic(2, 0, 1));  // 2 / sqrt2
}

TEST(LP, OptimumEqualsBestVertex) {
    // oracle: enumerate vertices and take the best objective
    Gen g(31);
    for (int it = 0; it < 60; ++it) {
        std::vector<HalfSpace> hs;
        for (int i = 0; i < 2; ++i) {
            Vec n(2, ExactScalar(0)), m(2, ExactScalar(0));
            n[i] = 1;
            m[i] = -1;
            hs.push_back({n, ExactScalar(3)});
            hs.push_back({m, ExactScalar(3)});
        }
        for (int k = 0; k < 3; ++k) hs.push_back({Vec{g.rational(5, 2), g.rational(5, 2)}, g.rational(10, 2)});
        Polytope P(2, hs);
        if (P.is_empty()) continue;
        Vec c{g.rational(), g.rational()};
        Mat A;
        Vec b;
        P.matrix(A, b);
        auto r = lp_maximize(A, b, c);
        ASSERT_EQ(r.status, LPStatus::Optimal);
        auto verts = P.vertices();
        ASSERT_FALSE(verts.empty());
        ExactScalar best = dot(c, verts[0]);
        for (const auto& v : verts) best = std::max(best, dot(c, v));
        EXPECT_EQ(r.value, best);
    }
}

TEST(LinearAlgebra, SolveAndRank) {
    Mat A{V({2, 1}), V({1, 3})};
    EXPECT_EQ(*solve_linear(A, V({3, 5})), (Vec{ExactScalar(Rational(4, 5)), ExactScalar(Rational(7, 5))}));
    EXPECT_FALSE(solve_linear(Mat{V({1, 2}), V({2, 4})}, V({1, 1})).has_value());
    EXPECT_EQ(matrix_rank(Mat{V({1, 2, 3}), V({2, 4, 6}), V({0, 1, 1})}), 2);
}

TEST(Polytope, SquareGeometry) {
    auto P = unit_square();
    EXPECT_EQ(P.vertices().size(), 4u);
    EXPECT_TRUE(P.is_bounded());
    EXPECT_FALSE(P.is_empty());
    EXPECT_TRUE(P.contains_closed(V({1, 1})));
    EXPECT_FALSE(P.contains_open(V({1, 1})));
    auto ip = P.interior_point();
    ASSERT_TRUE(ip.has_value());
    EXPECT_TRUE(P.contains_open(*ip));
    auto rg = P.range(V({1, -1}));
    ASSERT_TRUE(rg.has_value());
    EXPECT_EQ(rg->first, ExactScalar(-1));
    EXPECT_EQ(rg->second, ExactScalar(1));
}

TEST(Polytope, DegenerateIntersectionHasNoInterior) {
    auto P = unit_square().intersect(Polytope::box(V({1, 0}), V({2, 1})));
    EXPECT_FALSE(P.is_empty());
    EXPECT_FALSE(P.interior_point().has_value());
}
