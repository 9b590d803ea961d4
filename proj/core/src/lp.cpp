#include "nilcps/lp.hpp"

#include <algorithm>
#include <set>

namespace nilcps {

namespace {

struct Tableau {
    Mat T;                 // m rows, last entry is the right-hand side
    std::vector<int> basis;
    std::vector<char> banned;  // columns not allowed to enter
    int cols = 0;

    void pivot(int r, int c) {
        ExactScalar inv = T[r][c].inverse();
        for (auto& v : T[r])
            if (!v.is_zero()) v *= inv;
        for (std::size_t i = 0; i < T.size(); ++i) {
            if (int(i) == r || T[i][c].is_zero()) continue;
            ExactScalar f = T[i][c];
            for (int j = 0; j <= cols; ++j)
                if (!T[r][j].is_zero()) T[i][j] -= f * T[r][j];
        }
        basis[r] = c;
    }

    // maximize cost over the current basic feasible solution; false when unbounded
    bool run(const Vec& cost) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (banned[j]) continue;
                if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
                ExactScalar r = cost[j];
                for (std::size_t i = 0; i < T.size(); ++i)
                    if (!cost[basis[i]].is_zero() && !T[i][j].is_zero()) r -= cost[basis[i]] * T[i][j];
                if (r.sign() > 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            ExactScalar best;
            for (std::size_t i = 0; i < T.size(); ++i) {
                if (T[i][enter].sign() <= 0) continue;
                ExactScalar ratio = T[i][cols] / T[i][enter];
                int c = leave < 0 ? -1 : compare(ratio, best);
                if (leave < 0 || c < 0 || (c == 0 && basis[i] < basis[leave])) {
                    leave = int(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    ExactScalar value_of(const Vec& cost) const {
        ExactScalar v(0);
        for (std::size_t i = 0; i < T.size(); ++i)
            if (!cost[basis[i]].is_zero()) v += cost[basis[i]] * T[i][cols];
        return v;
    }
};

}  // namespace

LPResult lp_maximize(const Mat& A, const Vec& b, const Vec& c) {
    const int m = int(A.size());
    const int n = int(c.size());
    for (const auto& row : A)
        if (int(row.size()) != n) throw std::invalid_argument("LP dimension mismatch");
    if (int(b.size()) != m) throw std::invalid_argument("LP dimension mismatch");
    // columns: x+ (n), x- (n), slack (m), artificial (one per negative row)
    std::vector<int> neg_rows;
    for (int i = 0; i < m; ++i)
        if (b[i].sign() < 0) neg_rows.push_back(i);
    const int na = int(neg_rows.size());
    Tableau tb;
    tb.cols = 2 * n + m + na;
    tb.T.assign(m, Vec(tb.cols + 1, ExactScalar(0)));
    tb.basis.assign(m, 0);
    tb.banned.assign(tb.cols, 0);
    int art = 0;
    for (int i = 0; i < m; ++i) {
        bool neg = b[i].sign() < 0;
        auto& row = tb.T[i];
        for (int j = 0; j < n; ++j) {
            row[j] = neg ? -A[i][j] : A[i][j];
            row[n + j] = -row[j];
        }
        row[2 * n + i] = neg ? ExactScalar(-1) : ExactScalar(1);
        row[tb.cols] = neg ? -b[i] : b[i];
        if (neg) {
            int col = 2 * n + m + art++;
            row[col] = 1;
            tb.basis[i] = col;
        } else {
            tb.basis[i] = 2 * n + i;
        }
    }
    LPResult res;
    if (na > 0) {
        Vec cost1(tb.cols, ExactScalar(0));
        for (int a = 0; a < na; ++a) cost1[2 * n + m + a] = -1;
        tb.run(cost1);
        if (tb.value_of(cost1).sign() < 0) {
            res.status = LPStatus::Infeasible;
            return res;
        }
        // pivot artificials out of the basis; drop redundant rows
        for (int i = 0; i < int(tb.T.size()); ++i) {
            if (tb.basis[i] < 2 * n + m) continue;
            int col = -1;
            for (int j = 0; j < 2 * n + m && col < 0; ++j)
                if (!tb.T[i][j].is_zero()) col = j;
            if (col >= 0) {
                tb.pivot(i, col);
            } else {
                tb.T.erase(tb.T.begin() + i);
                tb.basis.erase(tb.basis.begin() + i);
                --i;
            }
        }
        for (int a = 0; a < na; ++a) tb.banned[2 * n + m + a] = 1;
    }
    Vec cost(tb.cols, ExactScalar(0));
    for (int j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    if (!tb.run(cost)) {
        res.status = LPStatus::Unbounded;
        return res;
    }
    Vec y(tb.cols, ExactScalar(0));
    for (std::size_t i = 0; i < tb.T.size(); ++i) y[tb.basis[i]] = tb.T[i][tb.cols];
    res.x.resize(n);
    for (int j = 0; j < n; ++j) res.x[j] = y[j] - y[n + j];
    res.value = dot(c, res.x);
    res.status = LPStatus::Optimal;
    return res;
}

std::optional<Vec> lp_feasible_point(const Mat& A, const Vec& b) {
    if (A.empty()) return std::nullopt;
    Vec c(A[0].size(), ExactScalar(0));
    auto r = lp_maximize(A, b, c);
    if (r.status == LPStatus::Infeasible) return std::nullopt;
    return r.x;
}

namespace {

std::optional<Vec> lex_opt(Mat A, Vec b, int sense) {
    if (A.empty()) return std::nullopt;
    const int n = int(A[0].size());
    Vec x;
    for (int k = 0; k < n; ++k) {
        Vec c(n, ExactScalar(0));
        c[k] = sense < 0 ? -1 : 1;
        auto r = lp_maximize(A, b, c);
        if (r.status == LPStatus::Infeasible) return std::nullopt;
        if (r.status == LPStatus::Unbounded) throw std::runtime_error("lexicographic LP unbounded");
        x = r.x;
        // fix coordinate k at its optimum
        Vec e(n, ExactScalar(0));
        e[k] = 1;
        A.push_back(e);
        b.push_back(x[k]);
        e[k] = -1;
        A.push_back(e);
        b.push_back(-x[k]);
    }
    return x;
}

}  // namespace

std::optional<Vec> lp_lexmin(const Mat& A, const Vec& b) { return lex_opt(A, b, -1); }
std::optional<Vec> lp_lexmax(const Mat& A, const Vec& b) { return lex_opt(A, b, 1); }

std::optional<Vec> solve_linear(Mat A, Vec b) {
    const int n = int(A.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!A[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        ExactScalar inv = A[col][col].inverse();
        for (int r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            ExactScalar f = A[r][col] * inv;
            for (int j = col; j < n; ++j)
                if (!A[col][j].is_zero()) A[r][j] -= f * A[col][j];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

int matrix_rank(Mat A) {
    if (A.empty()) return 0;
    const int m = int(A.size()), n = int(A[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int r = rank; r < m; ++r)
            if (!A[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[rank]);
        ExactScalar inv = A[rank][col].inverse();
        for (int r = rank + 1; r < m; ++r) {
            if (A[r][col].is_zero()) continue;
            ExactScalar f = A[r][col] * inv;
            for (int j = col; j < n; ++j)
                if (!A[rank][j].is_zero()) A[r][j] -= f * A[rank][j];
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------- Polytope

Polytope Polytope::box(const Vec& lo, const Vec& hi) {
    Polytope p;
    p.dim = int(lo.size());
    for (int i = 0; i < p.dim; ++i) {
        HalfSpace up, dn;
        up.normal.assign(p.dim, ExactScalar(0));
        dn.normal.assign(p.dim, ExactScalar(0));
        up.normal[i] = 1;
        up.offset = hi[i];
        dn.normal[i] = -1;
        dn.offset = -lo[i];
        p.hs.push_back(up);
        p.hs.push_back(dn);
    }
    return p;
}

void Polytope::matrix(Mat& A, Vec& b) const {
    A.clear();
    b.clear();
    for (const auto& h : hs) {
        A.push_back(h.normal);
        b.push_back(h.offset);
    }
}

bool Polytope::contains_closed(const GroupPoint& p) const {
    for (const auto& h : hs)
        if (h.slack(p).sign() < 0) return false;
    return true;
}

bool Polytope::contains_open(const GroupPoint& p) const {
    for (const auto& h : hs)
        if (h.slack(p).sign() <= 0) return false;
    return true;
}

bool Polytope::is_empty() const {
    Mat A;
    Vec b;
    matrix(A, b);
    if (A.empty()) return false;
    return !lp_feasible_point(A, b).has_value();
}

bool Polytope::is_bounded() const {
    Mat A;
    Vec b;
    matrix(A, b);
    if (A.empty()) return false;
    for (int i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
            Vec c(dim, ExactScalar(0));
            c[i] = s;
            auto r = lp_maximize(A, b, c);
            if (r.status == LPStatus::Unbounded) return false;
            if (r.status == LPStatus::Infeasible) return true;
        }
    return true;
}

std::optional<GroupPoint> Polytope::interior_point() const {
    // maximize t subject to <a_i, x> + t <= b_i, t <= 1
    Mat A;
    Vec b;
    for (const auto& h : hs) {
        Vec row = h.normal;
        row.push_back(ExactScalar(1));
        A.push_back(row);
        b.push_back(h.offset);
    }
    Vec cap(dim + 1, ExactScalar(0));
    cap[dim] = 1;
    A.push_back(cap);
    b.push_back(ExactScalar(1));
    auto r = lp_maximize(A, b, cap);
    if (r.status != LPStatus::Optimal || r.value.sign() <= 0) return std::nullopt;
    r.x.pop_back();
    return r.x;
}

std::optional<std::pair<ExactScalar, ExactScalar>> Polytope::range(const Vec& n) const {
    Mat A;
    Vec b;
    matrix(A, b);
    auto hi = lp_maximize(A, b, n);
    if (hi.status != LPStatus::Optimal) return std::nullopt;
    Vec neg(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) neg[i] = -n[i];
    auto lo = lp_maximize(A, b, neg);
    if (lo.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(-lo.value, hi.value);
}

std::vector<GroupPoint> Polytope::vertices() const {
    std::vector<GroupPoint> out;
    const int m = int(hs.size());
    if (m < dim) return out;
    std::vector<int> idx(dim);
    for (int i = 0; i < dim; ++i) idx[i] = i;
    std::set<GroupPoint, PointReprLess> seen;
    for (;;) {
        Mat A;
        Vec b;
        for (int i : idx) {
            A.push_back(hs[i].normal);
            b.push_back(hs[i].offset);
        }
        if (auto x = solve_linear(A, b); x && contains_closed(*x) && seen.insert(*x).second) out.push_back(*x);
        int k = dim - 1;
        while (k >= 0 && idx[k] == m - dim + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Polytope Polytope::intersect(const Polytope& o) const {
    if (dim != o.dim) throw std::invalid_argument("dimension mismatch");
    Polytope p = *this;
    p.hs.insert(p.hs.end(), o.hs.begin(), o.hs.end());
    return p;
}

}  // namespace nilcps
