// Seeded property tests over the invariants of each module.
#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "nilcps/complexity.hpp"

using namespace nilcps;
using nilcps::testing::Gen;

namespace {
std::vector<GroupSpec> groups() {
    return {GroupSpec::abelian(1), GroupSpec::abelian(2), GroupSpec::abelian(3), GroupSpec::heisenberg(),
            // R^5 with two central directions
            GroupSpec(5, {1, 1, 1, 2, 2}, {{0, 1, 3, 1}, {0, 2, 4, 1}, {1, 2, 4, Rational(-1, 2)}})};
}
}  // namespace

TEST(GroupLaw, GroupAxioms) {
    Gen g(61);
    for (const auto& G : groups()) {
        ASSERT_NO_THROW(G.validate());
        const int n = G.dim();
        for (int it = 0; it < 400; ++it) {
            auto x = g.point(n, true), y = g.point(n, true), z = g.point(n, true);
            EXPECT_EQ(bch_multiply(G, bch_multiply(G, x, y), z), bch_multiply(G, x, bch_multiply(G, y, z)));
            EXPECT_EQ(bch_multiply(G, x, identity(G)), x);
            EXPECT_EQ(bch_multiply(G, inverse(x), x), identity(G));
            Rational r(g.integer(1, 9), g.integer(1, 4));
            r.canonicalize();
            EXPECT_EQ(dilate(G, r, bch_multiply(G, x, y)), bch_multiply(G, dilate(G, r, x), dilate(G, r, y)));
        }
    }
}

TEST(GroupLaw, NormIsHomogeneousAndSymmetric) {
    Gen g(62);
    for (const auto& G : groups())
        for (int it = 0; it < 200; ++it) {
            auto x = g.point(G.dim());
            Rational r(g.integer(1, 9), g.integer(1, 4));
            r.canonicalize();
            EXPECT_NEAR(quasi_norm(G, dilate(G, r, x)), r.get_d() * quasi_norm(G, x), 1e-9);
            EXPECT_NEAR(quasi_norm(G, inverse(x)), quasi_norm(G, x), 1e-12);
        }
}

TEST(GroupLaw, KoranyiTriangleInequality) {
    auto G = GroupSpec::heisenberg(NormKind::Koranyi);
    Gen g(68);
    for (int it = 0; it < 10000; ++it) {
        auto x = g.point(3), y = g.point(3);
        EXPECT_LE(quasi_norm(G, bch_multiply(G, x, y)), quasi_norm(G, x) + quasi_norm(G, y) + 1e-9);
    }
}

TEST(GroupLaw, ConjugationIsXPlusBracket) {
    Gen g(63);
    auto G = GroupSpec::heisenberg();
    for (int it = 0; it < 300; ++it) {
        auto a = g.point(3, true), x = g.point(3, true);
        auto lhs = bch_multiply(G, bch_multiply(G, a, x), inverse(a));
        auto br = lie_bracket(G, a, x);
        GroupPoint rhs(3);
        for (int k = 0; k < 3; ++k) rhs[k] = x[k] + br[k];
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(HalfSpaces, TranslationPreservesMembership) {
    Gen g(64);
    auto G = GroupSpec::heisenberg();
    for (int it = 0; it < 300; ++it) {
        HalfSpace P{{g.rational(), g.rational(), g.rational()}, g.rational()};
        auto x = g.point(3), p = g.point(3);
        auto xP = act_on_halfspace(G, x, P);
        EXPECT_EQ(P.slack(p).sign() >= 0, xP.slack(bch_multiply(G, x, p)).sign() >= 0);
    }
}

TEST(Lp, FeasiblePointSatisfiesConstraints) {
    Gen g(65);
    for (int it = 0; it < 200; ++it) {
        int d = int(g.integer(1, 3));
        Mat A;
        Vec b;
        for (int i = 0; i < d + 3; ++i) {
            Vec row;
            for (int j = 0; j < d; ++j) row.emplace_back(g.rational(4, 2));
            A.push_back(row);
            b.emplace_back(g.rational(6, 2));
        }
        auto x = lp_feasible_point(A, b);
        if (!x) continue;
        for (std::size_t i = 0; i < A.size(); ++i) EXPECT_LE(dot(A[i], *x), b[i]);
    }
}

TEST(Arrangements, AddingAPlaneNeverLosesRegions) {
    Gen g(66);
    for (int d = 1; d <= 3; ++d) {
        Vec lo(d, ExactScalar(-3)), hi(d, ExactScalar(3));
        auto B = Polytope::box(lo, hi);
        for (int it = 0; it < 15; ++it) {
            Arrangement arr;
            arr.dim = d;
            std::int64_t prev = 1;
            for (int k = 0; k < 6; ++k) {
                Vec n;
                for (int j = 0; j < d; ++j) n.emplace_back(g.integer(-2, 2));
                if (std::all_of(n.begin(), n.end(), [](const ExactScalar& v) { return v.is_zero(); })) continue;
                HyperplaneH P(n, ExactScalar(g.integer(-3, 3)));
                bool dup = false;
                for (const auto& Q : arr.planes) dup = dup || Q.canonical() == P.canonical();
                if (dup) continue;
                arr.planes.push_back(P);
                auto cur = count_regions_in_B(arr, B);
                // a plane through the interior splits at least one region
                EXPECT_GE(cur, prev + (meets_interior(P, B) ? 1 : 0));
                EXPECT_LE(mpz_class(cur), schlafli_bound(std::int64_t(arr.size()), d));
                prev = cur;
            }
        }
    }
}

TEST(Arrangements, FlatCountsMatchChi) {
    // the constant term of chi counts B-central subsets with sign; flats of dim d is 1
    Gen g(67);
    for (int it = 0; it < 30; ++it) {
        Arrangement arr;
        arr.dim = 2;
        int n = int(g.integer(1, 6));
        while (int(arr.size()) < n) {
            long a = g.integer(-3, 3), b = g.integer(-3, 3);
            if (a == 0 && b == 0) continue;
            HyperplaneH P({ExactScalar(a), ExactScalar(b)}, ExactScalar(g.integer(-2, 2)));
            bool dup = false;
            for (const auto& Q : arr.planes) dup = dup || Q.canonical() == P.canonical();
            if (!dup) arr.planes.push_back(P);
        }
        auto B = Polytope::box({ExactScalar(-5), ExactScalar(-5)}, {ExactScalar(5), ExactScalar(5)});
        auto chi = characteristic_polynomial_wrt_B(arr, B);
        auto flats = flats_in_B(arr, B);
        EXPECT_EQ(chi[2], 1);
        EXPECT_EQ(flats[2], 1);
        EXPECT_EQ(-chi[1], flats[1]);  // single planes meeting the body
    }
}

TEST(Slabs, MonotoneInRadius) {
    for (const char* n : {"fibonacci", "planar", "cubic-plane", "heisenberg"}) {
        auto s = nilcps::testing::bundled(n);
        std::set<std::vector<long>> prev;
        for (Rational r : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
            std::set<std::vector<long>> cur;
            for (const auto& p : slab(s, r)) cur.insert(p.coeffs);
            EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end())) << n;
            prev = cur;
        }
    }
}

TEST(ModelSets, UniformlyDiscreteAndRelativelyDense) {
    // covering radius per scheme; the cubic set has density 1/9 per unit length
    struct Case {
        const char* scheme;
        long R, cover;
    };
    for (auto c : {Case{"fibonacci", 12, 6}, Case{"planar", 12, 6}, Case{"cubic-plane", 60, 40}, Case{"heisenberg", 4, 6}}) {
        SCOPED_TRACE(c.scheme);
        auto s = nilcps::testing::bundled(c.scheme);
        auto pts = model_set(s, Rational(c.R));
        ASSERT_FALSE(pts.empty());
        // no nontrivial difference of model set points lies in the slab at a small radius
        EXPECT_EQ(slab(s, Rational(1, 4)).size(), 1u);
        for (std::size_t i = 0; i < pts.size(); i += 11)
            EXPECT_GT(displacements(s, pts[i], Rational(c.cover)).size(), 1u);
    }
}

TEST(Census, PatchClassesGrowWithRadius) {
    auto s = nilcps::testing::bundled("fibonacci");
    std::int64_t prev = 0;
    for (long r = 1; r <= 12; ++r) {
        auto c = complexity_census(s, Rational(r), Rational(80));
        EXPECT_GE(c.p_hat, prev);
        prev = c.p_hat;
    }
}
