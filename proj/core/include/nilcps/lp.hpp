#pragma once

#include <optional>
#include <vector>

#include "nilcps/group.hpp"

namespace nilcps {

using Vec = std::vector<ExactScalar>;
using Mat = std::vector<Vec>;

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Vec x;
    ExactScalar value;
};

// maximize c.x subject to A x <= b with x free; exact simplex, Bland's rule
LPResult lp_maximize(const Mat& A, const Vec& b, const Vec& c);
// any point of {A x <= b}
std::optional<Vec> lp_feasible_point(const Mat& A, const Vec& b);
// lexicographically smallest point of {A x <= b} (bounded in every coordinate)
std::optional<Vec> lp_lexmin(const Mat& A, const Vec& b);
std::optional<Vec> lp_lexmax(const Mat& A, const Vec& b);

// unique solution of a square system, nullopt when singular
std::optional<Vec> solve_linear(Mat A, Vec b);
int matrix_rank(Mat A);

// Intersection of closed half-spaces <a_i, x> <= b_i
struct Polytope {
    int dim = 0;
    std::vector<HalfSpace> hs;

    Polytope() = default;
    Polytope(int d, std::vector<HalfSpace> h) : dim(d), hs(std::move(h)) {}
    static Polytope box(const Vec& lo, const Vec& hi);

    void matrix(Mat& A, Vec& b) const;
    bool contains_closed(const GroupPoint& p) const;
    bool contains_open(const GroupPoint& p) const;
    bool is_bounded() const;
    bool is_empty() const;
    // point with every constraint strict, if the interior is nonempty
    std::optional<GroupPoint> interior_point() const;
    // (min, max) of <n, x>; nullopt when empty or unbounded
    std::optional<std::pair<ExactScalar, ExactScalar>> range(const Vec& n) const;
    std::vector<GroupPoint> vertices() const;
    Polytope intersect(const Polytope& o) const;
};

}  // namespace nilcps
