#include "nilcps/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace nilcps {

namespace {

struct KeyHash {
    std::size_t operator()(const SlabKey& k) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto w : k) h = (h ^ std::hash<std::uint64_t>()(w)) * 1099511628211ULL;
        return h;
    }
};

Rational ipow(const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= x;
    return r;
}

long integer_weight(const GroupSpec& h, int k) {
    const Rational& w = h.weights()[k];
    if (w.get_den() != 1) throw ValidationError("window geometry needs integer dilation weights");
    return w.get_num().get_si();
}

Rational rational_of(const ExactScalar& v, const char* what) {
    if (!v.is_rational()) throw ValidationError(std::string(what) + " must be rational");
    return v.a();
}

// weighted max-norm in double precision
double wmax(const GroupSpec& h, const std::vector<double>& x) {
    double m = 0;
    for (int k = 0; k < h.dim(); ++k) m = std::max(m, std::pow(std::fabs(x[k]), 1.0 / h.weights()[k].get_d()));
    return m;
}

// coefficients of x in <a, x c> for a 2-step group: a_k + 1/2 sum a_j c^j_{kl} c_l
std::vector<Rational> pulled_normal(const GroupSpec& h, const std::vector<Rational>& a, const std::vector<Rational>& c) {
    std::vector<Rational> g = a;
    for (const auto& b : h.brackets()) {
        // [e_i, e_j] = c e_k, so x_i c_j and -x_j c_i contribute
        g[b.i] += a[b.k] * b.c * c[b.j] / 2;
        g[b.j] -= a[b.k] * b.c * c[b.i] / 2;
    }
    return g;
}

// largest rho with B_rho(c) inside {<a, x> <= b}; exact when the root is rational,
// otherwise a dyadic lower bound. nullopt when the constraint never binds.
std::optional<Rational> halfspace_radius(const GroupSpec& h, const HalfSpace& hs, const std::vector<Rational>& c) {
    std::vector<Rational> a;
    for (const auto& v : hs.normal) a.push_back(rational_of(v, "window normal"));
    Rational t = rational_of(hs.offset, "window offset");
    for (int k = 0; k < h.dim(); ++k) t -= a[k] * c[k];
    if (sgn(t) <= 0) return Rational(0);
    auto g = pulled_normal(h, a, c);
    std::vector<std::pair<Rational, long>> terms;
    for (int k = 0; k < h.dim(); ++k)
        if (sgn(g[k]) != 0) terms.push_back({abs(g[k]), integer_weight(h, k)});
    if (terms.empty()) return std::nullopt;
    auto f = [&](const Rational& rho) {
        Rational s = 0;
        for (const auto& [gk, w] : terms) s += gk * ipow(rho, w);
        return s;
    };
    // a single monomial has the closed form (t / g)^(1/w)
    bool one_weight = std::all_of(terms.begin(), terms.end(), [&](auto& p) { return p.second == terms[0].second; });
    if (one_weight) {
        Rational gs = 0;
        for (const auto& p : terms) gs += p.first;
        try {
            return rational_power(t / gs, Rational(1, terms[0].second));
        } catch (const std::exception&) {
        }
    }
    Rational lo = 0, hi = 1;
    while (f(hi) <= t) hi *= 2;
    for (int it = 0; it < 64; ++it) {
        Rational mid = (lo + hi) / 2;
        if (f(mid) <= t) lo = mid;
        else hi = mid;
    }
    return lo;
}

Rational min_radius(const GroupSpec& h, const std::vector<HalfSpace>& hs, const std::vector<Rational>& c, int skip) {
    std::optional<Rational> best;
    for (int j = 0; j < int(hs.size()); ++j) {
        if (j == skip) continue;
        auto r = halfspace_radius(h, hs[j], c);
        if (r && (!best || *r < *best)) best = *r;
    }
    if (!best) throw ValidationError("degenerate polytope: no constraint bounds the inscribed ball");
    return *best;
}

GroupPoint to_point(const std::vector<Rational>& v) {
    GroupPoint p;
    for (const auto& q : v) p.push_back(ExactScalar(q));
    return p;
}

// midpoint of the lexmin and lexmax optima of an LP face
std::vector<Rational> face_midpoint(const Mat& A, const Vec& b, int nvar) {
    auto lo = lp_lexmin(A, b), hi = lp_lexmax(A, b);
    if (!lo || !hi) throw ValidationError("degenerate polytope: centre LP has no bounded optimum");
    std::vector<Rational> m(nvar);
    for (int k = 0; k < nvar; ++k) m[k] = rational_of(((*lo)[k] + (*hi)[k]) / ExactScalar(2), "centre");
    return m;
}

Rational l1(const std::vector<ExactScalar>& a) {
    Rational s = 0;
    for (const auto& v : a) s += abs(rational_of(v, "window normal"));
    return s;
}

// abelian Chebyshev centre of {x : rows} (optionally restricted to a plane)
std::vector<Rational> abelian_centre(const std::vector<HalfSpace>& hs, int dim, int on_face) {
    // variables (x, rho); maximize rho
    Mat A;
    Vec b;
    for (int j = 0; j < int(hs.size()); ++j) {
        Vec row(hs[j].normal.begin(), hs[j].normal.end());
        if (j == on_face) {
            row.push_back(ExactScalar(0));
            A.push_back(row);
            b.push_back(hs[j].offset);
            Vec neg;
            for (const auto& v : row) neg.push_back(-v);
            A.push_back(neg);
            b.push_back(-hs[j].offset);
            continue;
        }
        row.push_back(ExactScalar(l1(hs[j].normal)));
        A.push_back(row);
        b.push_back(hs[j].offset);
    }
    Vec c(dim + 1, ExactScalar(0));
    c[dim] = 1;
    auto res = lp_maximize(A, b, c);
    if (res.status != LPStatus::Optimal || res.value.sign() <= 0)
        throw ValidationError("degenerate polytope: no interior for the centre LP");
    // fix rho at its optimum, then take the midpoint of the optimal face in x
    Mat A2;
    Vec b2;
    for (std::size_t r = 0; r < A.size(); ++r) {
        A2.push_back(Vec(A[r].begin(), A[r].begin() + dim));
        b2.push_back(b[r] - A[r][dim] * res.value);
    }
    return face_midpoint(A2, b2, dim);
}

struct Section {
    Mat A;
    Vec b;
};

Section body_rows(const Polytope& B) {
    Section s;
    B.matrix(s.A, s.b);
    return s;
}

void add_row(Section& s, const std::vector<ExactScalar>& n, const ExactScalar& off) {
    s.A.push_back(Vec(n.begin(), n.end()));
    s.b.push_back(off);
}

// every point of the section satisfies <n, x> <= off
bool section_inside(const Section& sec, const HalfSpace& h) {
    auto res = lp_maximize(sec.A, sec.b, Vec(h.normal.begin(), h.normal.end()));
    if (res.status == LPStatus::Infeasible) return true;
    if (res.status == LPStatus::Unbounded) return false;
    return res.value <= h.offset;
}

std::vector<HalfSpace> shifted_window(const SchemeSpec& s, const GroupPoint& shift) {
    std::vector<HalfSpace> out;
    for (const auto& h : s.window.hs) out.push_back(act_on_halfspace(s.h, shift, h));
    return out;
}

struct PlaneLess {
    bool operator()(const HyperplaneH& a, const HyperplaneH& b) const { return HyperplaneH::repr_compare(a, b) < 0; }
};

std::vector<HyperplaneH> dedupe_planes(std::vector<HyperplaneH> v) {
    for (auto& p : v) p = p.canonical();
    std::sort(v.begin(), v.end(), PlaneLess());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// point of a box with half-widths w: corner index or uniform dyadic sample
std::vector<Rational> box_sample(const std::vector<Rational>& w, std::mt19937_64& rng, long corner, bool open) {
    const int n = int(w.size());
    std::vector<Rational> x(n);
    const Rational shrink = open ? Rational(1048575, 1048576) : Rational(1);
    for (int k = 0; k < n; ++k) {
        if (corner >= 0) {
            x[k] = w[k] * shrink;
            if (!((corner >> k) & 1)) x[k] = -x[k];
        } else {
            // (2u - 1) w with u = m / 2^20, m in [1, 2^20 - 1]
            long m = long(rng() % 1048575) + 1;
            x[k] = (Rational(2 * m, 1048576) - 1) * w[k];
        }
    }
    return x;
}

std::vector<Rational> widths(const GroupSpec& h, const Rational& rho) {
    std::vector<Rational> w;
    for (int k = 0; k < h.dim(); ++k) w.push_back(ipow(rho, integer_weight(h, k)));
    return w;
}

struct GoodPairEval {
    std::string violation;
    double sampled = 0, bound = 0;
};

GoodPairEval evaluate_pair(const SchemeSpec& s, const WindowParameters& wp, const Rational& k, const Rational& h,
                           const GoodPairOptions& opt) {
    GoodPairEval ev;
    if (!(sgn(k) > 0 && k < h)) {
        ev.violation = "i) 0 < k < h";
        return ev;
    }
    if (!(h < wp.I_W)) {
        ev.violation = "ii) h < I_W";
        return ev;
    }
    // iii) |a x a^-1| <= F_W for a in B_{O_W}(e), x in B_{2h}(e); a x a^-1 = x + [a, x]
    const GroupSpec& H = s.h;
    const int n = H.dim();
    std::vector<double> wa(n), wx(n);
    for (int q = 0; q < n; ++q) {
        wa[q] = std::pow(wp.O_W, H.weights()[q].get_d());
        wx[q] = std::pow(Rational(2 * h).get_d(), H.weights()[q].get_d());
    }
    std::vector<double> bnd = wx;
    for (const auto& b : H.brackets()) {
        double c = std::fabs(b.c.get_d());
        bnd[b.k] += c * (wa[b.i] * wx[b.j] + wa[b.j] * wx[b.i]);
    }
    ev.bound = wmax(H, bnd);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto conj = [&](const std::vector<double>& a, const std::vector<double>& x) {
        std::vector<double> y = x;
        for (const auto& b : H.brackets()) y[b.k] += b.c.get_d() * (a[b.i] * x[b.j] - a[b.j] * x[b.i]);
        return wmax(H, y);
    };
    const long corners = n <= 10 ? (1L << n) : 0;
    std::vector<double> a(n), x(n);
    for (long ca = 0; ca < corners; ++ca)
        for (long cx = 0; cx < corners; ++cx) {
            for (int q = 0; q < n; ++q) {
                a[q] = ((ca >> q) & 1) ? wa[q] : -wa[q];
                x[q] = ((cx >> q) & 1) ? wx[q] : -wx[q];
            }
            ev.sampled = std::max(ev.sampled, conj(a, x));
        }
    for (int t = 0; t < opt.samples; ++t) {
        for (int q = 0; q < n; ++q) {
            a[q] = U(rng) * wa[q];
            x[q] = U(rng) * wx[q];
        }
        ev.sampled = std::max(ev.sampled, conj(a, x));
    }
    if (ev.sampled > wp.F_W) {
        ev.violation = "iii) conjugation distortion exceeds F_W";
        return ev;
    }
    // iv) sampled shifts s in U_i cut B_h(c_W) all-round
    Polytope B = ball_polytope(H, wp.c_W, h);
    auto wk = widths(H, k);
    for (int i = 0; i < int(s.window.hs.size()); ++i) {
        GroupPoint u0 = bch_multiply(H, wp.c_W, inverse(wp.p_i[i]));
        for (int t = 0; t < opt.shifts; ++t) {
            long corner = t < corners ? t : -1;
            GroupPoint shift = bch_multiply(H, to_point(box_sample(wk, rng, corner, true)), u0);
            if (!cuts_all_round(s, shift, i, B)) {
                ev.violation = "iv) face " + std::to_string(i + 1) + " is not cut all-round at " + point_str(shift);
                return ev;
            }
        }
    }
    return ev;
}

}  // namespace

// ---------------------------------------------------------------- patches

PatchSampler::PatchSampler(const SchemeSpec& s, const Rational& R, const Rational& r, const EnumerationOptions& opt)
    : s_(s), R_(R), r_(r),
      index_(s, model_set_box(s, NeighbourIndex::covering_box(s, R, r), opt), r) {
    if (sgn(r) <= 0 || sgn(R) <= 0) throw std::invalid_argument("radii must be positive");
    for (const auto& p : index_.points())
        if (norm_less(s.g, p.g_part, R)) centres_.push_back(p);
}

void PatchSampler::check_radius(const LatticePoint& lambda) const {
    if (!norm_less(s_.g, lambda.g_part, R_))
        throw InsufficientRadius("patch centre " + point_str(lambda.g_part) + " lies outside the sample radius " +
                                 to_string(R_));
}

std::vector<LatticePoint> PatchSampler::patch(const LatticePoint& lambda) const {
    check_radius(lambda);
    std::vector<LatticePoint> out;
    for (const auto& q : index_.patch_key(lambda.g_part)) {
        auto u = lattice_point(s_, q);
        out.push_back(lattice_point(s_, coefficients_of(s_, bch_multiply(s_.g, u.g_part, lambda.g_part))));
    }
    std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) { return a.coeffs < b.coeffs; });
    return out;
}

PatchClassKey PatchSampler::key(const LatticePoint& lambda) const {
    check_radius(lambda);
    return index_.patch_key(lambda.g_part);
}

// ---------------------------------------------------------------- census

namespace {

// Uniform grid over the window box. Each cell stores the slab bits that are
// decided for the whole cell and the translates that still need a point test.
struct CellGrid {
    int n = 0, per_axis = 1;
    std::vector<double> lo, step;
    std::vector<SlabKey> base;
    std::vector<std::vector<int>> open;

    CellGrid(const SchemeSpec& s, const std::vector<TranslatedWindow>& tws, std::size_t words) {
        auto box = bounding_box(s.window);
        n = int(box.size());
        per_axis = std::max(2, int(std::floor(std::pow(4096.0, 1.0 / n))));
        for (const auto& [a, b] : box) {
            lo.push_back(a);
            step.push_back((b - a) / per_axis);
        }
        std::size_t cells = 1;
        for (int k = 0; k < n; ++k) cells *= std::size_t(per_axis);
        base.assign(cells, SlabKey(words, 0));
        open.resize(cells);
        std::vector<double> clo(n), chi(n);
        for (std::size_t c = 0; c < cells; ++c) {
            std::size_t rem = c;
            for (int k = 0; k < n; ++k) {
                int idx = int(rem % std::size_t(per_axis));
                rem /= std::size_t(per_axis);
                clo[k] = lo[k] + idx * step[k];
                chi[k] = clo[k] + step[k];
            }
            for (std::size_t j = 0; j < tws.size(); ++j) {
                bool inside = true, outside = false;
                for (std::size_t q = 0; q < tws[j].hs.size() && !outside; ++q) {
                    // slack b - <a, x> over the cell, with a margin for rounding and cell assignment
                    double smin = tws[j].b_approx[q].v, smax = smin, norm = 1;
                    for (int k = 0; k < n; ++k) {
                        double a = tws[j].n_approx[q][k].v;
                        smin -= std::max(a * clo[k], a * chi[k]);
                        smax -= std::min(a * clo[k], a * chi[k]);
                        norm += std::fabs(a);
                    }
                    double tol = 1e-6 * norm;
                    if (smax < -tol) outside = true;
                    if (!(smin > tol)) inside = false;
                }
                if (outside) continue;
                if (inside) base[c][j / 64] |= 1ULL << (j % 64);
                else open[c].push_back(int(j));
            }
        }
    }

    std::size_t cell_of(const std::vector<Approx>& h) const {
        std::size_t c = 0, mul = 1;
        for (int k = 0; k < n; ++k) {
            int idx = int(std::floor((h[k].v - lo[k]) / step[k]));
            idx = std::clamp(idx, 0, per_axis - 1);
            c += std::size_t(idx) * mul;
            mul *= std::size_t(per_axis);
        }
        return c;
    }
};

}  // namespace

CensusResult complexity_census(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r, const Rational& R,
                               const EnumerationOptions& opt) {
    if (sgn(R) <= 0) throw std::invalid_argument("R must be positive");
    // gamma lambda in the model set  <=>  tau(lambda) in tau(gamma)^-1 W
    std::vector<TranslatedWindow> tws;
    for (const auto& gm : slab_r) tws.push_back(translated_window(s, inverse(gm.h_part)));
    const std::size_t words = (slab_r.size() + 63) / 64;
    CellGrid grid(s, tws, words);
    std::unordered_set<SlabKey, KeyHash> small, big;
    CensusResult res;
    const Rational R2 = 2 * R;
    for_each_model_point(
        s, g_box_for_radius(s, R2),
        [&](const ModelCandidate& c) {
            if (!filtered_norm_less(s, c.g, R2, [&] { return c.exact().g_part; })) return;
            std::size_t cell = grid.cell_of(c.h);
            SlabKey key = grid.base[cell];
            for (int j : grid.open[cell])
                if (tws[j].contains_open(c.h, [&] { return c.exact().h_part; })) key[j / 64] |= 1ULL << (j % 64);
            if (filtered_norm_less(s, c.g, R, [&] { return c.exact().g_part; })) {
                ++res.points;
                small.insert(key);
            }
            big.insert(std::move(key));
        },
        opt);
    res.p_hat = std::int64_t(small.size());
    res.p_hat_doubled = std::int64_t(big.size());
    res.saturated = res.p_hat == res.p_hat_doubled;
    return res;
}

CensusResult complexity_census(const SchemeSpec& s, const Rational& r, const Rational& R) {
    if (!(R > r)) throw std::invalid_argument("census needs R_sample > r");
    return complexity_census(s, slab(s, r), R);
}

// ---------------------------------------------------------------- acceptance domains

bool AcceptanceDomain::contains(const SchemeSpec& s, const GroupPoint& h) const {
    for (const auto& mu : positive)
        if (!s.window.contains_open(bch_multiply(s.h, inverse(mu), h))) return false;
    for (const auto& mu : negative)
        if (s.window.contains_closed(bch_multiply(s.h, inverse(mu), h))) return false;
    return true;
}

AcceptanceDomain acceptance_domain(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r,
                                   const LatticePoint& lambda) {
    auto split = slab_of(s, slab_r, lambda);
    AcceptanceDomain dom;
    dom.witness = lambda.h_part;
    // split.in holds gamma with gamma^-1 lambda in the model set, i.e. tau(lambda) in tau(gamma) W
    for (const auto& g : split.in) dom.positive.push_back(g.h_part);
    for (const auto& g : split.out) dom.negative.push_back(g.h_part);
    if (!dom.contains(s, dom.witness))
        throw std::logic_error("acceptance domain does not contain its witness " + point_str(dom.witness));
    return dom;
}

ConsistencyReport check_census_consistency(const SchemeSpec& s, const PatchSampler& sampler,
                                           const std::vector<LatticePoint>& slab_r) {
    ConsistencyReport rep;
    std::map<PatchClassKey, std::size_t> classes;  // key -> representative centre
    std::vector<PatchClassKey> keys;
    for (std::size_t idx = 0; idx < sampler.centres().size(); ++idx) {
        const auto& lam = sampler.centres()[idx];
        auto key = sampler.key(lam);
        // P_r(lambda) lambda^-1 and the displacement part of the slab are the same set
        PatchClassKey from_slab;
        for (const auto& g : slab_of(s, slab_r, lam).in)
            if (norm_less(s.g, g.g_part, sampler.r())) from_slab.push_back(coefficients_of(s, inverse(g.g_part)));
        std::sort(from_slab.begin(), from_slab.end());
        if (from_slab != key) ++rep.partition_mismatches;
        classes.emplace(key, idx);
        keys.push_back(std::move(key));
        ++rep.points;
    }
    rep.classes = std::int64_t(classes.size());
    std::vector<AcceptanceDomain> doms;
    for (const auto& [k, idx] : classes) doms.push_back(acceptance_domain(s, slab_r, sampler.centres()[idx]));
    for (const auto& lam : sampler.centres()) {
        int hits = 0;
        for (const auto& d : doms)
            if (d.contains(s, lam.h_part) && ++hits > 1) break;
        if (hits != 1) ++rep.tiling_failures;
    }
    return rep;
}

// ---------------------------------------------------------------- window geometry

Polytope ball_polytope(const GroupSpec& h, const GroupPoint& c, const Rational& rho) {
    if (sgn(rho) <= 0) throw std::invalid_argument("ball radius must be positive");
    const int n = h.dim();
    // (y c^-1)_k = y_k - c_k - 1/2 sum c^k_{ij} y_i c_j
    std::vector<std::vector<ExactScalar>> lin(n, std::vector<ExactScalar>(n, ExactScalar(0)));
    for (int k = 0; k < n; ++k) lin[k][k] = 1;
    for (const auto& b : h.brackets()) {
        lin[b.k][b.i] -= ExactScalar(b.c / 2) * c[b.j];
        lin[b.k][b.j] += ExactScalar(b.c / 2) * c[b.i];
    }
    Polytope P;
    P.dim = n;
    for (int k = 0; k < n; ++k) {
        ExactScalar w(ipow(rho, integer_weight(h, k)));
        P.hs.push_back(HalfSpace{lin[k], w + c[k]});
        std::vector<ExactScalar> neg;
        for (const auto& v : lin[k]) neg.push_back(-v);
        P.hs.push_back(HalfSpace{neg, w - c[k]});
    }
    return P;
}

WindowParameters window_parameters(const SchemeSpec& s) {
    const GroupSpec& H = s.h;
    const auto& hs = s.window.hs;
    const int n = H.dim();
    if (!s.window.interior_point()) throw ValidationError("degenerate polytope: window has empty interior");
    WindowParameters wp;
    auto c = abelian_centre(hs, n, -1);
    wp.c_W = to_point(c);
    wp.I_W = min_radius(H, hs, c, -1);
    wp.I_W_value = wp.I_W.get_d();
    for (const auto& v : s.window.vertices()) {
        auto x = bch_multiply(H, v, inverse(wp.c_W));
        std::vector<double> d;
        for (const auto& e : x) d.push_back(e.to_double());
        wp.O_W = std::max(wp.O_W, wmax(H, d));
    }
    wp.F_W = -1;
    for (int i = 0; i < int(hs.size()); ++i) {
        auto p = abelian_centre(hs, n, i);
        // the whole ball lies in every other half-space, so its trace on P_i is inside the face
        double f = min_radius(H, hs, p, i).get_d();
        wp.p_i.push_back(to_point(p));
        wp.F_i.push_back(f);
        wp.F_W = wp.F_W < 0 ? f : std::min(wp.F_W, f);
    }
    Mat rows;
    for (int i = 0; i < int(hs.size()) && int(wp.family.size()) < n; ++i) {
        rows.push_back(Vec(hs[i].normal.begin(), hs[i].normal.end()));
        if (matrix_rank(rows) == int(rows.size())) wp.family.push_back(i);
        else rows.pop_back();
    }
    return wp;
}

bool cuts_fully(const SchemeSpec& s, const GroupPoint& shift, int face, const Polytope& B) {
    const auto& hs = s.window.hs;
    if (face < 0 || face >= int(hs.size())) throw std::out_of_range("face index");
    auto sw = shifted_window(s, shift);
    HyperplaneH P = sw[face].boundary();
    if (!meets_interior(P, B)) return false;
    Section sec = body_rows(B);
    add_row(sec, P.normal, P.offset);
    std::vector<ExactScalar> neg;
    for (const auto& v : P.normal) neg.push_back(-v);
    add_row(sec, neg, -P.offset);
    for (int j = 0; j < int(sw.size()); ++j)
        if (j != face && !section_inside(sec, sw[j])) return false;
    return true;
}

bool cuts_all_round(const SchemeSpec& s, const GroupPoint& shift, int face, const Polytope& B) {
    if (!cuts_fully(s, shift, face, B)) return false;
    auto sw = shifted_window(s, shift);
    Section sec = body_rows(B);
    add_row(sec, sw[face].normal, sw[face].offset);
    for (int j = 0; j < int(sw.size()); ++j)
        if (j != face && !section_inside(sec, sw[j])) return false;
    return true;
}

std::string verify_good_pair(const SchemeSpec& s, const WindowParameters& wp, const Rational& k, const Rational& h,
                             const GoodPairOptions& opt) {
    return evaluate_pair(s, wp, k, h, opt).violation;
}

GoodPair good_pair_search(const SchemeSpec& s, const WindowParameters& wp, const GoodPairOptions& opt) {
    Rational h = wp.I_W / 2, k = wp.I_W / 4;
    std::string last;
    for (int it = 0; it <= opt.max_halvings; ++it) {
        auto ev = evaluate_pair(s, wp, k, h, opt);
        if (ev.violation.empty()) {
            GoodPair gp;
            gp.k = k;
            gp.h = h;
            gp.distortion_sampled = ev.sampled;
            gp.distortion_bound = ev.bound;
            gp.halvings = it;
            return gp;
        }
        last = ev.violation;
        h /= 2;
        k /= 2;
    }
    throw GoodPairFailure("no good pair within " + std::to_string(opt.max_halvings) + " halvings; last violation: " +
                          last);
}

std::vector<LatticePoint> u_i_of_r(const SchemeSpec& s, const WindowParameters& wp, int face, const Rational& r,
                                   const GoodPair& gp) {
    if (face < 0 || face >= int(wp.p_i.size())) throw std::out_of_range("face index");
    GroupPoint centre = bch_multiply(s.h, wp.c_W, inverse(wp.p_i[face]));
    std::vector<LatticePoint> out;
    for (auto& lp : enumerate_lattice(s, r, ball_polytope(s.h, centre, gp.k)))
        if (ball_contains(s.h, gp.k, centre, lp.h_part)) out.push_back(std::move(lp));
    return out;
}

// ---------------------------------------------------------------- region bounds

RegionBound upper_bound_regions(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r, std::size_t cap) {
    std::vector<HyperplaneH> planes;
    for (const auto& mu : slab_r)
        for (const auto& f : s.faces()) {
            HyperplaneH P = act_on_hyperplane(s.h, mu.h_part, f);
            if (meets_interior(P, s.window)) planes.push_back(P);
        }
    Arrangement arr;
    arr.dim = s.h.dim();
    arr.planes = dedupe_planes(std::move(planes));
    RegionBound rb;
    rb.planes = std::int64_t(arr.size());
    rb.regions = count_regions_in_B(arr, s.window, cap);
    return rb;
}

RegionBound lower_bound_regions(const SchemeSpec& s, const WindowParameters& wp, const Rational& r,
                                const GoodPair& gp, const Rational& concentration, std::uint64_t seed) {
    const int d = s.h.dim();
    const int N = int(s.window.hs.size());
    Polytope B = ball_polytope(s.h, wp.c_W, gp.h);
    RegionBound rb;
    // per face: distinct planes with multiplicities
    std::vector<std::map<HyperplaneH, int, PlaneLess>> fam(N);
    std::vector<std::int64_t> usize(N);
    std::vector<HyperplaneH> all;
    for (int i = 0; i < N; ++i) {
        auto U = u_i_of_r(s, wp, i, r, gp);
        usize[i] = std::int64_t(U.size());
        for (const auto& u : U) {
            HyperplaneH P = act_on_hyperplane(s.h, u.h_part, s.window.hs[i].boundary()).canonical();
            ++fam[i][P];
            all.push_back(P);
        }
    }
    Arrangement arr;
    arr.dim = d;
    arr.planes = dedupe_planes(all);
    rb.planes = std::int64_t(arr.size());
    rb.regions = count_regions_in_B(arr, B);

    // (a) every cross-family d-tuple meets in one point of B_h(c_W)
    std::vector<std::vector<HyperplaneH>> lists;
    std::int64_t tuples = 1;
    for (int f : wp.family) {
        std::vector<HyperplaneH> l;
        for (const auto& [P, m] : fam[f]) l.push_back(P);
        tuples = l.empty() ? 0 : std::min<std::int64_t>(tuples * std::int64_t(l.size()), 1LL << 40);
        lists.push_back(std::move(l));
    }
    if (int(wp.family.size()) < d) {
        rb.certified = false;
        rb.notes.push_back("no family of dim(H) faces with independent normals");
    } else if (tuples == 0) {
        rb.notes.push_back("incidence check vacuous: some U_i(r) of the family is empty");
    } else {
        const bool exhaustive = tuples <= 20000;
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> pick(d, 0);
        std::int64_t runs = exhaustive ? tuples : 2000;
        for (std::int64_t t = 0; t < runs; ++t) {
            if (exhaustive) {
                std::int64_t rem = t;
                for (int q = 0; q < d; ++q) {
                    pick[q] = std::size_t(rem % std::int64_t(lists[q].size()));
                    rem /= std::int64_t(lists[q].size());
                }
            } else {
                for (int q = 0; q < d; ++q) pick[q] = std::size_t(rng() % lists[q].size());
            }
            Mat A;
            Vec b;
            for (int q = 0; q < d; ++q) {
                A.push_back(lists[q][pick[q]].normal);
                b.push_back(lists[q][pick[q]].offset);
            }
            auto x = solve_linear(A, b);
            if (!x || !B.contains_open(*x)) {
                rb.certified = false;
                rb.notes.push_back("incidence check violated: a family tuple does not meet in one point of B_h(c_W)");
                break;
            }
        }
        if (rb.certified)
            rb.notes.push_back(std::string("incidence check holds on ") + (exhaustive ? "all " : "sampled ") +
                               std::to_string(runs) + " tuples");
    }

    // (b) at most c |U_i(r)| planes of one family through a point
    for (int i = 0; i < N; ++i) {
        if (usize[i] == 0) continue;
        Rational limit = concentration * usize[i];
        std::int64_t worst = 0;
        for (const auto& [P, m] : fam[i]) worst = std::max<std::int64_t>(worst, m);
        if (limit >= 1) {
            Arrangement sub;
            sub.dim = d;
            std::vector<int> mult;
            for (const auto& [P, m] : fam[i]) {
                sub.planes.push_back(P);
                mult.push_back(m);
            }
            for (const auto& v : vertices_in_B(sub, nullptr)) {
                std::int64_t w = 0;
                for (int q : v.planes) w += mult[q];
                worst = std::max(worst, w);
            }
            // codimension-two flats carry the remaining concurrences in dimension 3
            for (std::size_t a = 0; a < sub.size() && d == 3; ++a)
                for (std::size_t b2 = a + 1; b2 < sub.size(); ++b2) {
                    Mat M{sub.planes[a].normal, sub.planes[b2].normal};
                    if (matrix_rank(M) < 2) continue;
                    std::int64_t w = mult[a] + mult[b2];
                    for (std::size_t c = 0; c < sub.size(); ++c) {
                        if (c == a || c == b2) continue;
                        Mat M3 = M;
                        M3.push_back(sub.planes[c].normal);
                        if (matrix_rank(M3) > 2) continue;
                        Mat Aug;
                        for (const auto* p : {&sub.planes[a], &sub.planes[b2], &sub.planes[c]}) {
                            Vec row = p->normal;
                            row.push_back(p->offset);
                            Aug.push_back(row);
                        }
                        if (matrix_rank(Aug) == 2) w += mult[c];
                    }
                    worst = std::max(worst, w);
                }
        }
        if (Rational(worst) > limit) {
            rb.certified = false;
            std::ostringstream os;
            os << "multiplicity check violated on face " << i + 1 << ": " << worst << " planes through one point, limit "
               << to_string(limit) << " with |U_i(r)| = " << usize[i];
            rb.notes.push_back(os.str());
        }
    }
    if (std::all_of(usize.begin(), usize.end(), [](std::int64_t u) { return u == 0; }))
        rb.notes.push_back("every U_i(r) is empty");
    return rb;
}

Fit exponent_fit(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw std::invalid_argument("exponent fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(pts.size());
    for (const auto& [r, c] : pts) {
        if (!(r > 0) || !(c > 0)) throw std::invalid_argument("exponent fit needs positive inputs");
        double x = std::log(r), y = std::log(c);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = n * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("exponent fit needs distinct radii");
    Fit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (const auto& [r, c] : pts) {
        double e = std::log(c) - (f.intercept + f.slope * std::log(r));
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

}  // namespace nilcps
