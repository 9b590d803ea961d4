#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support.hpp"

using namespace nilcps;

namespace {

// mu in W W^-1 iff some w in W has mu w in W; mu w is affine in w for 2-step H
bool ww_oracle(const SchemeSpec& s, const GroupPoint& mu) {
    const int d = s.h.dim();
    Mat A;
    Vec b;
    for (const auto& hs : s.window.hs) {
        A.push_back(hs.normal);
        b.push_back(hs.offset);
        Vec row(d, ExactScalar(0));
        ExactScalar rhs = hs.offset;
        for (int k = 0; k < d; ++k) {
            rhs -= hs.normal[k] * mu[k];
            row[k] += hs.normal[k];
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (sgn(s.h.c(i, j, k)) != 0)
                        row[j] += hs.normal[k] * ExactScalar(s.h.c(i, j, k) / 2) * mu[i];
        }
        A.push_back(row);
        b.push_back(rhs);
    }
    return lp_feasible_point(A, b).has_value();
}

std::set<std::vector<long>> coeff_set(const std::vector<LatticePoint>& v) {
    std::set<std::vector<long>> out;
    for (const auto& p : v) out.insert(p.coeffs);
    return out;
}

// brute force over a coefficient box
template <class F>
void each_coeff(std::vector<long> lo, std::vector<long> hi, F f) {
    std::vector<long> q = lo;
    while (true) {
        f(q);
        std::size_t i = 0;
        for (; i < q.size(); ++i) {
            if (++q[i] <= hi[i]) break;
            q[i] = lo[i];
        }
        if (i == q.size()) return;
    }
}

}  // namespace

TEST(ModelSet, FibonacciMatchesBruteForce) {
    auto s = nilcps::testing::bundled("fibonacci");
    for (long R : {5L, 20L, 50L}) {
        std::set<std::vector<long>> expect;
        // |a + b sqrt2| < R and |a - b sqrt2| < 1/2 force |a|, |b| <= R
        each_coeff({-R, -R}, {R, R}, [&](const std::vector<long>& q) {
            auto x = ExactScalar::quadratic(2, q[0], q[1]);
            if (x.abs() < ExactScalar(R) && x.star().abs() < ExactScalar(Rational(1, 2))) expect.insert(q);
        });
        EXPECT_EQ(coeff_set(model_set(s, Rational(R))), expect) << "R=" << R;
    }
}

TEST(ModelSet, FibonacciIsDelone) {
    // finitely many gap lengths, bounded above and away from zero
    auto s = nilcps::testing::bundled("fibonacci");
    auto pts = model_set(s, Rational(200));
    std::vector<ExactScalar> xs;
    for (const auto& p : pts) xs.push_back(p.g_part[0]);
    std::sort(xs.begin(), xs.end());
    std::set<std::string> gaps;
    ExactScalar mn = xs[1] - xs[0], mx = mn;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        auto g = xs[i] - xs[i - 1];
        gaps.insert(g.str());
        mn = std::min(mn, g);
        mx = std::max(mx, g);
    }
    EXPECT_LE(gaps.size(), 3u);
    EXPECT_GT(mn, ExactScalar(0));
    EXPECT_LT(mx, ExactScalar(10));
}

TEST(StarMap, SendsLatticeGToH) {
    auto s = nilcps::testing::bundled("heisenberg");
    auto lp = lattice_point(s, {1, 1, 0, 2, 3, -1});
    EXPECT_EQ(star_map(s, lp.g_part), lp.h_part);
    EXPECT_EQ(coefficients_of(s, lp.g_part), lp.coeffs);
    EXPECT_THROW(coefficients_of(s, GroupPoint{ExactScalar(Rational(1, 2)), 0, 0}), std::invalid_argument);
}

TEST(Slab, HeisenbergCountsMatchBruteForce) {
    auto s = nilcps::testing::bundled("heisenberg");
    const long expected[] = {41, 249};
    for (long r : {2L, 3L}) {
        // |g_i| < r on the first two coordinates and |h_i| <= 1 bound a, b by r;
        // the matrix centre is below r^2 + r^2 / 2 + 1
        long c1 = r, c3 = r * r + r * r / 2 + 2;
        std::set<std::vector<long>> expect;
        each_coeff({-c1, -c1, -c1, -c1, -c3, -c3}, {c1, c1, c1, c1, c3, c3}, [&](const std::vector<long>& q) {
            auto lp = lattice_point(s, q);
            if (!norm_less(s.g, lp.g_part, Rational(r))) return;
            if (ww_oracle(s, lp.h_part)) expect.insert(q);
        });
        auto sl = slab(s, Rational(r));
        EXPECT_EQ(coeff_set(sl), expect) << "r=" << r;
        EXPECT_EQ(long(sl.size()), expected[r - 2]);
    }
}

TEST(Slab, ContainsIdentityAndIsSymmetric) {
    for (const char* n : {"fibonacci", "planar", "cubic-plane", "heisenberg"}) {
        SCOPED_TRACE(n);
        auto s = nilcps::testing::bundled(n);
        auto sl = slab(s, Rational(3));
        auto set = coeff_set(sl);
        EXPECT_TRUE(set.count(std::vector<long>(s.n() * s.degree(), 0)));
        for (const auto& p : sl) EXPECT_TRUE(set.count(coefficients_of(s, inverse(p.g_part))));
    }
}

TEST(Slab, SlabOfSplitsIntoInverseDisplacements) {
    auto s = nilcps::testing::bundled("heisenberg");
    auto ms = model_set(s, Rational(4));
    auto sl = slab(s, Rational(2));
    for (std::size_t i = 0; i < ms.size(); i += 7) {
        auto split = slab_of(s, sl, ms[i]);
        EXPECT_EQ(split.in.size() + split.out.size(), sl.size());
        std::set<std::vector<long>> inv;
        for (const auto& d : displacements(s, ms[i], Rational(2))) inv.insert(coefficients_of(s, inverse(d.g_part)));
        EXPECT_EQ(coeff_set(split.in), inv);
    }
}

TEST(ShiftedWindow, MembershipMatchesTranslatedWindow) {
    auto s = nilcps::testing::bundled("heisenberg");
    auto sl = slab(s, Rational(2));
    auto ms = model_set(s, Rational(3));
    for (const auto& mu : sl)
        for (std::size_t i = 0; i < ms.size(); i += 5) {
            // mu lambda in Lambda iff tau(mu) tau(lambda) in W
            auto prod = bch_multiply(s.h, mu.h_part, ms[i].h_part);
            EXPECT_EQ(window_shift_membership(s, mu.h_part, ms[i].h_part), s.window.contains_open(prod));
        }
}

TEST(Flc, BundledFibonacciSaturates) {
    auto s = nilcps::testing::bundled("fibonacci");
    auto f = check_flc(s, Rational(60), Rational(4));
    EXPECT_TRUE(f.saturated);
    EXPECT_EQ(f.count, f.count_doubled);
    EXPECT_GE(f.count, 1);
}

TEST(Enumeration, CapAndBudgetAbort) {
    auto s = nilcps::testing::bundled("heisenberg");
    EnumerationOptions opt;
    opt.candidate_cap = 10;
    EXPECT_THROW(slab(s, Rational(4), opt), CapExceeded);
    EnumerationOptions late;
    late.deadline = std::chrono::steady_clock::now();
    EXPECT_THROW(slab(s, Rational(6), late), BudgetExceeded);
}
