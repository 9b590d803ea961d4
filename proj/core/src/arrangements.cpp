#include "nilcps/arrangements.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace nilcps {

void Arrangement::validate() const {
    if (dim < 1) throw ValidationError("arrangement dimension must be >= 1");
    std::vector<HyperplaneH> canon;
    for (const auto& p : planes) {
        if (p.dim() != dim) throw ValidationError("hyperplane dimension differs from arrangement dimension");
        bool nz = std::any_of(p.normal.begin(), p.normal.end(), [](const ExactScalar& v) { return !v.is_zero(); });
        if (!nz) throw ValidationError("hyperplane with zero normal");
        canon.push_back(p.canonical());
    }
    std::sort(canon.begin(), canon.end(),
              [](const HyperplaneH& a, const HyperplaneH& b) { return HyperplaneH::repr_compare(a, b) < 0; });
    for (std::size_t i = 1; i < canon.size(); ++i)
        if (canon[i] == canon[i - 1]) throw ValidationError("repeated hyperplane " + point_str(canon[i].normal));
    if (!family.empty()) {
        if (family.size() != planes.size()) throw ValidationError("family labels must cover every hyperplane");
        for (int f : family)
            if (f < 1 || f > dim) throw ValidationError("family labels must lie in 1..dim");
    }
}

namespace {

bool hyper_less(const HyperplaneH& a, const HyperplaneH& b) { return HyperplaneH::repr_compare(a, b) < 0; }

std::vector<HyperplaneH> dedupe(std::vector<HyperplaneH> v) {
    for (auto& p : v) p = p.canonical();
    std::sort(v.begin(), v.end(), hyper_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Convex body with cached vertices and double approximations for filtering
struct Body {
    int dim = 0;
    std::vector<HalfSpace> hs;
    std::vector<std::vector<Approx>> hs_n;
    std::vector<Approx> hs_b;
    std::vector<GroupPoint> verts;
    std::vector<std::vector<Approx>> verts_a;

    Body(int d, std::vector<HalfSpace> h) : dim(d), hs(std::move(h)) {
        for (const auto& x : hs) {
            std::vector<Approx> n;
            for (const auto& v : x.normal) n.push_back(v.approx());
            hs_n.push_back(std::move(n));
            hs_b.push_back(x.offset.approx());
        }
        verts = Polytope(dim, hs).vertices();
        for (const auto& v : verts) {
            std::vector<Approx> a;
            for (const auto& c : v) a.push_back(c.approx());
            verts_a.push_back(std::move(a));
        }
    }

    // the plane takes values on both strict sides over the vertices
    bool meets_interior(const HyperplaneH& P) const {
        std::vector<Approx> n;
        for (const auto& v : P.normal) n.push_back(v.approx());
        Approx b = P.offset.approx();
        bool below = false, above = false;
        std::vector<std::size_t> unsure;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            Approx s = -b;
            for (int j = 0; j < dim; ++j) s = s + n[j] * verts_a[i][j];
            int sg = s.certain_sign();
            if (sg < 0) below = true;
            else if (sg > 0) above = true;
            else unsure.push_back(i);
            if (below && above) return true;
        }
        for (std::size_t i : unsure) {
            int sg = (dot(P.normal, verts[i]) - P.offset).sign();
            if (sg < 0) below = true;
            if (sg > 0) above = true;
            if (below && above) return true;
        }
        return false;
    }
};

// restriction to the plane P: coordinates other than the pivot stay free
struct PlaneChart {
    int pivot = 0;
    std::vector<ExactScalar> ratio;  // n_j / n_p
    ExactScalar rb;                  // b / n_p

    explicit PlaneChart(const HyperplaneH& P) {
        double best = -1;
        for (int j = 0; j < P.dim(); ++j) {
            if (P.normal[j].is_zero()) continue;
            double a = std::fabs(P.normal[j].to_double());
            if (a > best) {
                best = a;
                pivot = j;
            }
        }
        ExactScalar inv = P.normal[pivot].inverse();
        for (const auto& v : P.normal) ratio.push_back(v * inv);
        rb = P.offset * inv;
    }
    // returns false when the restricted normal vanishes
    bool restrict(const std::vector<ExactScalar>& n, const ExactScalar& off, std::vector<ExactScalar>& out_n,
                  ExactScalar& out_b) const {
        out_n.clear();
        const ExactScalar& hp = n[pivot];
        bool nz = false;
        for (int j = 0; j < int(n.size()); ++j) {
            if (j == pivot) continue;
            ExactScalar v = hp.is_zero() ? n[j] : n[j] - hp * ratio[j];
            nz = nz || !v.is_zero();
            out_n.push_back(std::move(v));
        }
        out_b = hp.is_zero() ? off : off - hp * rb;
        return nz;
    }
};

struct Line2 {
    ExactScalar a, b, c;
    Approx A, B, C;
};

bool strictly_inside(const Body& body, const ExactScalar& x, const ExactScalar& y) {
    for (const auto& h : body.hs)
        if ((h.offset - h.normal[0] * x - h.normal[1] * y).sign() <= 0) return false;
    return true;
}

// plane arrangement in a convex polygon; lines already meet the interior and are distinct
std::int64_t count_2d(const std::vector<HyperplaneH>& lines, const Body& body) {
    std::vector<Line2> L;
    L.reserve(lines.size());
    for (const auto& p : lines)
        L.push_back({p.normal[0], p.normal[1], p.offset, p.normal[0].approx(), p.normal[1].approx(), p.offset.approx()});
    std::int64_t total = 1;
    struct Cand {
        Approx t;
        int k;
    };
    std::vector<Cand> cand;
    for (std::size_t j = 0; j < L.size(); ++j) {
        const Line2& lj = L[j];
        bool by_y = std::fabs(lj.A.v) >= std::fabs(lj.B.v);
        cand.clear();
        for (std::size_t k = 0; k < j; ++k) {
            const Line2& lk = L[k];
            Approx den = lj.A * lk.B - lk.A * lj.B;
            bool exact_needed = den.certain_sign() == 0;
            if (!exact_needed) {
                Approx x = (lj.C * lk.B - lk.C * lj.B) / den;
                Approx y = (lj.A * lk.C - lk.A * lj.C) / den;
                int where = 1;  // 1 inside, -1 outside, 0 unsure
                for (std::size_t h = 0; h < body.hs.size() && where != -1; ++h) {
                    Approx s = body.hs_b[h] - body.hs_n[h][0] * x - body.hs_n[h][1] * y;
                    int sg = s.certain_sign();
                    if (sg < 0) where = -1;
                    else if (sg == 0) where = 0;
                }
                if (where == -1) continue;
                if (where == 1) {
                    cand.push_back({by_y ? y : x, int(k)});
                    continue;
                }
            }
            ExactScalar d = lj.a * lk.b - lk.a * lj.b;
            if (d.is_zero()) continue;  // parallel
            ExactScalar inv = d.inverse();
            ExactScalar x = (lj.c * lk.b - lk.c * lj.b) * inv;
            ExactScalar y = (lj.a * lk.c - lk.a * lj.c) * inv;
            if (!strictly_inside(body, x, y)) continue;
            ExactScalar t = by_y ? y : x;
            cand.push_back({t.approx(), int(k)});
        }
        std::sort(cand.begin(), cand.end(), [](const Cand& p, const Cand& q) { return p.t.v < q.t.v; });
        std::int64_t distinct = 0;
        std::size_t i = 0;
        while (i < cand.size()) {
            std::size_t e = i + 1;
            double hi = cand[i].t.v + cand[i].t.e;
            while (e < cand.size() && cand[e].t.v - cand[e].t.e <= hi) {
                hi = std::max(hi, cand[e].t.v + cand[e].t.e);
                ++e;
            }
            if (e == i + 1) {
                ++distinct;
            } else {
                // overlapping cluster: resolve exactly
                std::vector<ExactScalar> ts;
                for (std::size_t q = i; q < e; ++q) {
                    const Line2& lk = L[cand[q].k];
                    ExactScalar d = lj.a * lk.b - lk.a * lj.b;
                    ExactScalar num = by_y ? lj.a * lk.c - lk.a * lj.c : lj.c * lk.b - lk.c * lj.b;
                    ts.push_back(num * d.inverse());
                }
                std::sort(ts.begin(), ts.end());
                distinct += std::int64_t(std::unique(ts.begin(), ts.end()) - ts.begin());
            }
            i = e;
        }
        total += 1 + distinct;
    }
    return total;
}

std::int64_t count_rec(int m, const std::vector<HyperplaneH>& planes, const Body& body) {
    if (planes.empty()) return 1;
    if (m == 1) return 1 + std::int64_t(planes.size());
    if (m == 2) return count_2d(planes, body);
    std::int64_t total = 1;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        PlaneChart chart(planes[i]);
        std::vector<HalfSpace> sub;
        for (const auto& h : body.hs) {
            HalfSpace r;
            if (chart.restrict(h.normal, h.offset, r.normal, r.offset)) sub.push_back(std::move(r));
        }
        Body sb(m - 1, std::move(sub));
        std::vector<HyperplaneH> traces;
        for (std::size_t j = 0; j < i; ++j) {
            HyperplaneH t;
            if (!chart.restrict(planes[j].normal, planes[j].offset, t.normal, t.offset)) continue;
            if (sb.meets_interior(t)) traces.push_back(std::move(t));
        }
        total += count_rec(m - 1, dedupe(std::move(traces)), sb);
    }
    return total;
}

void check_body(const Polytope& B, int d) {
    if (B.dim != d) throw ValidationError("body dimension differs from arrangement dimension");
    if (!B.interior_point()) throw ValidationError("body has empty interior");
    if (!B.is_bounded()) throw ValidationError("body is unbounded");
}

// does the affine subspace {A x = b} meet the interior of B
bool flat_meets_interior(const Mat& eqA, const Vec& eqb, const Polytope& B) {
    const int d = B.dim;
    Mat A;
    Vec b;
    for (const auto& h : B.hs) {
        Vec row = h.normal;
        row.push_back(ExactScalar(1));
        A.push_back(std::move(row));
        b.push_back(h.offset);
    }
    for (std::size_t i = 0; i < eqA.size(); ++i) {
        Vec r1 = eqA[i], r2;
        for (const auto& v : eqA[i]) r2.push_back(-v);
        r1.push_back(ExactScalar(0));
        r2.push_back(ExactScalar(0));
        A.push_back(std::move(r1));
        b.push_back(eqb[i]);
        A.push_back(std::move(r2));
        b.push_back(-eqb[i]);
    }
    Vec tr(d + 1, ExactScalar(0));
    tr[d] = 1;
    A.push_back(tr);
    b.push_back(ExactScalar(1));
    LPResult r = lp_maximize(A, b, tr);
    return r.status == LPStatus::Optimal && r.value.sign() > 0;
}

// reduced row echelon form of the augmented system, zero rows dropped
std::vector<Vec> rref(std::vector<Vec> M) {
    if (M.empty()) return M;
    const int cols = int(M[0].size());
    int row = 0;
    for (int c = 0; c < cols && row < int(M.size()); ++c) {
        int p = -1;
        for (int r = row; r < int(M.size()); ++r)
            if (!M[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(M[p], M[row]);
        ExactScalar inv = M[row][c].inverse();
        for (auto& v : M[row]) v *= inv;
        for (int r = 0; r < int(M.size()); ++r) {
            if (r == row || M[r][c].is_zero()) continue;
            ExactScalar f = M[r][c];
            for (int k = 0; k < cols; ++k) M[r][k] -= f * M[row][k];
        }
        ++row;
    }
    M.resize(row);
    return M;
}

struct FlatLess {
    bool operator()(const std::vector<Vec>& a, const std::vector<Vec>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = point_repr_compare(a[i], b[i]);
            if (c) return c < 0;
        }
        return false;
    }
};

template <class Visit>
void central_subsets(const Arrangement& arr, const Polytope& B, Visit&& visit) {
    Mat A;
    Vec b;
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        visit(A, b);
        for (std::size_t i = start; i < arr.planes.size(); ++i) {
            A.push_back(arr.planes[i].normal);
            b.push_back(arr.planes[i].offset);
            if (flat_meets_interior(A, b, B)) dfs(i + 1);
            A.pop_back();
            b.pop_back();
        }
    };
    dfs(0);
}

}  // namespace

bool meets_interior(const HyperplaneH& P, const Polytope& B) {
    Body body(B.dim, B.hs);
    return body.meets_interior(P);
}

std::int64_t count_regions_in_B(const Arrangement& arr, const Polytope& B, std::size_t cap) {
    arr.validate();
    check_body(B, arr.dim);
    Body body(B.dim, B.hs);
    std::vector<HyperplaneH> inside;
    for (const auto& p : arr.planes)
        if (body.meets_interior(p)) inside.push_back(p);
    if (inside.size() > cap)
        throw ArrangementCapExceeded("arrangement has " + std::to_string(inside.size()) +
                                     " hyperplanes meeting the body, cap is " + std::to_string(cap));
    return count_rec(arr.dim, dedupe(std::move(inside)), body);
}

std::vector<std::int64_t> characteristic_polynomial_wrt_B(const Arrangement& arr, const Polytope& B,
                                                          std::size_t cap) {
    arr.validate();
    check_body(B, arr.dim);
    if (arr.size() > cap)
        throw ArrangementCapExceeded("characteristic polynomial needs |arrangement| <= " + std::to_string(cap));
    std::vector<std::int64_t> chi(arr.dim + 1, 0);
    central_subsets(arr, B, [&](const Mat& A, const Vec&) {
        int dim = arr.dim - (A.empty() ? 0 : matrix_rank(A));
        chi[dim] += (A.size() % 2 == 0) ? 1 : -1;
    });
    return chi;
}

std::int64_t regions_from_chi(const std::vector<std::int64_t>& chi, int d) {
    std::int64_t v = 0;
    for (std::size_t k = 0; k < chi.size(); ++k) v += (k % 2 == 0 ? 1 : -1) * chi[k];
    return d % 2 == 0 ? v : -v;
}

std::vector<std::int64_t> flats_in_B(const Arrangement& arr, const Polytope& B, std::size_t cap) {
    arr.validate();
    check_body(B, arr.dim);
    if (arr.size() > cap) throw ArrangementCapExceeded("flat enumeration needs |arrangement| <= " + std::to_string(cap));
    std::set<std::vector<Vec>, FlatLess> seen;
    std::vector<std::int64_t> counts(arr.dim + 1, 0);
    central_subsets(arr, B, [&](const Mat& A, const Vec& b) {
        std::vector<Vec> aug;
        for (std::size_t i = 0; i < A.size(); ++i) {
            Vec r = A[i];
            r.push_back(b[i]);
            aug.push_back(std::move(r));
        }
        auto key = rref(aug);
        if (seen.insert(key).second) counts[arr.dim - int(key.size())] += 1;
    });
    return counts;
}

std::vector<Vertex> vertices_in_B(const Arrangement& arr, const Polytope* B) {
    arr.validate();
    const int d = arr.dim;
    const int n = int(arr.size());
    std::map<GroupPoint, std::set<int>, PointReprLess> found;
    std::vector<int> pick;
    Mat A;
    std::function<void(int)> rec = [&](int start) {
        if (int(pick.size()) == d) {
            Vec b;
            for (int i : pick) b.push_back(arr.planes[i].offset);
            auto x = solve_linear(A, b);
            if (!x) return;
            if (B && !B->contains_closed(*x)) return;
            auto& s = found[*x];
            for (int i : pick) s.insert(i);
            return;
        }
        for (int i = start; i < n; ++i) {
            A.push_back(arr.planes[i].normal);
            pick.push_back(i);
            // a rank-deficient partial system stays singular
            if (int(A.size()) == 1 || matrix_rank(A) == int(A.size())) rec(i + 1);
            A.pop_back();
            pick.pop_back();
        }
    };
    rec(0);
    std::vector<Vertex> out;
    for (auto& [p, s] : found) {
        Vertex v;
        v.point = p;
        if (d == 2) {
            v.planes.assign(s.begin(), s.end());
        } else {
            for (int i = 0; i < n; ++i)
                if (arr.planes[i].contains(p)) v.planes.push_back(i);
        }
        v.a = int(v.planes.size());
        out.push_back(std::move(v));
    }
    return out;
}

IncidenceProfile incidence_profile(const Arrangement& arr, const Polytope* B) {
    IncidenceProfile pr;
    pr.n = int(arr.size());
    pr.vertices = vertices_in_B(arr, B);
    pr.t.assign(pr.n + 1, 0);
    pr.t_star.assign(pr.n + 1, 0);
    for (const auto& v : pr.vertices)
        for (int k = 0; k <= pr.n; ++k) {
            if (v.a >= k) ++pr.t[k];
            if (k <= v.a && v.a < 2 * k) ++pr.t_star[k];
        }
    return pr;
}

bool BeckReport::all_pass() const { return violations() == 0; }
int BeckReport::violations() const {
    return int(std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.pass; }));
}

BeckReport check_beck_bounds(const IncidenceProfile& pr, int n) {
    BeckReport rep;
    auto t = [&](int k) -> std::int64_t { return k < int(pr.t.size()) ? pr.t[k] : 0; };
    for (int k = 2; k <= n; ++k) {
        Rational lim(std::int64_t(n) * (n - 1), std::int64_t(k) * (k - 1));
        rep.checks.push_back({"pairs", k, t(k), lim.get_d(), Rational(t(k)) <= lim});
        if (std::int64_t(k) * k > 2 * std::int64_t(n)) {
            Rational l2(2 * n, k);
            rep.checks.push_back({"large-k", k, t(k), l2.get_d(), Rational(t(k)) < l2});
        }
        if (k >= 3 && std::int64_t(k) * k <= n) {
            Rational l3 = kBeckBeta * Rational(std::int64_t(n) * n, std::int64_t(k) * k * k);
            rep.checks.push_back({"szemeredi-trotter", k, t(k), l3.get_d(), Rational(t(k)) < l3});
        }
    }
    return rep;
}

IncidenceCheck szemeredi_trotter_check(const IncidenceProfile& pr, int lines) {
    IncidenceCheck c;
    for (const auto& v : pr.vertices) c.incidences += v.a;
    double P = double(pr.vertices.size()), L = double(lines);
    c.limit = 2.5 * (std::cbrt(P * P) * std::cbrt(L * L) + P + L);
    c.pass = double(c.incidences) <= c.limit;
    return c;
}

namespace {
mpz_class binom(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}
}  // namespace

Rational beck_constant(int d) {
    if (d < 2) throw std::invalid_argument("beck constant needs d >= 2");
    Rational c(mpz_class(1), 16 * binom(1024, 2));
    for (int l = 3; l <= d; ++l) {
        mpz_class top;
        mpz_ui_pow_ui(top.get_mpz_t(), static_cast<unsigned long>(l), 10);
        c = c / (Rational(binom(top.get_si(), l)) * l);
    }
    c.canonicalize();
    return c;
}

BeckFamilyResult beck_family_check(const Arrangement& arr, const Polytope& B, const Rational& c,
                                   std::uint64_t seed) {
    arr.validate();
    check_body(B, arr.dim);
    const int d = arr.dim;
    const int n = int(arr.size());
    BeckFamilyResult res;
    res.constant = beck_constant(d);
    mpz_class nd;
    mpz_pow_ui(nd.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(d));
    res.required = res.constant * Rational(nd);
    auto verts = vertices_in_B(arr, &B);
    res.vertex_count = std::int64_t(verts.size());
    auto fail = [&](const std::string& why) {
        if (res.violation.empty()) res.violation = why;
    };
    std::vector<std::vector<int>> fam(d);
    if (arr.family.empty()) {
        fail("hyperplanes carry no family labels");
    } else {
        for (int i = 0; i < n; ++i) fam[arr.family[i] - 1].push_back(i);
        for (const auto& f : fam)
            if (std::int64_t(f.size()) * d != n) fail("families must each hold n/d hyperplanes");
    }
    if (!(sgn(c) > 0 && c < Rational(1, 100))) fail("concurrency constant must satisfy 0 < c < 1/100");
    if (res.violation.empty()) {
        // every cross-family d-tuple meets B in exactly one point
        double tuples = 1;
        for (const auto& f : fam) tuples *= double(f.size());
        std::mt19937_64 rng(seed);
        auto check_tuple = [&](const std::vector<int>& pick) {
            Mat A;
            Vec b;
            for (int i : pick) {
                A.push_back(arr.planes[i].normal);
                b.push_back(arr.planes[i].offset);
            }
            auto x = solve_linear(A, b);
            return x && B.contains_closed(*x);
        };
        std::vector<int> pick(d);
        if (tuples <= 20000) {
            std::function<bool(int)> all = [&](int f) {
                if (f == d) return check_tuple(pick);
                for (int i : fam[f]) {
                    pick[f] = i;
                    if (!all(f + 1)) return false;
                }
                return true;
            };
            if (!all(0)) fail("a cross-family tuple does not meet B in a single point");
        } else {
            for (int s = 0; s < 2000; ++s) {
                for (int f = 0; f < d; ++f) pick[f] = fam[f][rng() % fam[f].size()];
                if (!check_tuple(pick)) {
                    fail("a sampled cross-family tuple does not meet B in a single point");
                    break;
                }
            }
        }
    }
    if (res.violation.empty()) {
        for (const auto& v : verts) {
            std::vector<int> per(d, 0);
            for (int i : v.planes) ++per[arr.family[i] - 1];
            for (int f = 0; f < d; ++f)
                if (Rational(per[f]) > c * Rational(long(fam[f].size()))) {
                    fail("more than c|F_i| hyperplanes of one family pass through " + point_str(v.point));
                    break;
                }
            if (!res.violation.empty()) break;
        }
    }
    if (res.violation.empty() && Rational(res.vertex_count) < res.required) fail("vertex count below c_d n^d");
    res.certified = res.violation.empty();
    return res;
}

mpz_class schlafli_bound(std::int64_t n, int d) {
    if (n < 0 || d < 0) throw std::invalid_argument("schlafli bound needs n, d >= 0");
    mpz_class s = 0;
    for (int i = 0; i <= d && i <= n; ++i) s += binom(long(n), i);
    return s;
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::string> content_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

std::pair<int, std::vector<std::pair<Vec, ExactScalar>>> parse_rows(const std::string& text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ValidationError("missing dimension line");
    int d = 0;
    try {
        std::size_t pos = 0;
        d = std::stoi(lines[0], &pos);
        if (lines[0].find_first_not_of(" \t\r", pos) != std::string::npos) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
        throw ValidationError("line 1: expected the dimension");
    }
    if (d < 1) throw ValidationError("line 1: dimension must be >= 1");
    std::vector<std::pair<Vec, ExactScalar>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream ls(lines[i]);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (int(tok.size()) != d + 2 || tok[d] != "|")
            throw ValidationError("row " + std::to_string(i) + ": expected " + std::to_string(d) + " coefficients, '|', offset");
        Vec a;
        try {
            for (int k = 0; k < d; ++k) a.push_back(ExactScalar(parse_rational(tok[k])));
            rows.push_back({std::move(a), ExactScalar(parse_rational(tok[d + 1]))});
        } catch (const std::invalid_argument& e) {
            throw ValidationError("row " + std::to_string(i) + ": " + e.what());
        }
    }
    return {d, std::move(rows)};
}

std::string row_text(const Vec& a, const ExactScalar& b) {
    std::string s;
    for (const auto& v : a) {
        if (!v.is_rational()) throw std::invalid_argument("text format holds rational coefficients only");
        s += to_string(v.coeff(0)) + " ";
    }
    if (!b.is_rational()) throw std::invalid_argument("text format holds rational coefficients only");
    return s + "| " + to_string(b.coeff(0)) + "\n";
}

}  // namespace

Arrangement parse_arrangement(const std::string& text) {
    auto [d, rows] = parse_rows(text);
    Arrangement arr;
    arr.dim = d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::all_of(rows[i].first.begin(), rows[i].first.end(), [](const ExactScalar& v) { return v.is_zero(); }))
            throw ValidationError("row " + std::to_string(i + 1) + ": zero normal");
        arr.planes.emplace_back(std::move(rows[i].first), std::move(rows[i].second));
    }
    arr.validate();
    return arr;
}

std::string arrangement_to_text(const Arrangement& arr) {
    std::string s = std::to_string(arr.dim) + "\n";
    for (const auto& p : arr.planes) s += row_text(p.normal, p.offset);
    return s;
}

Polytope parse_body(const std::string& text) {
    auto [d, rows] = parse_rows(text);
    Polytope B;
    B.dim = d;
    for (auto& [a, b] : rows) B.hs.push_back({std::move(a), std::move(b)});
    check_body(B, d);
    return B;
}

std::string body_to_text(const Polytope& B) {
    std::string s = std::to_string(B.dim) + "\n";
    for (const auto& h : B.hs) s += row_text(h.normal, h.offset);
    return s;
}

}  // namespace nilcps
