#include "nilcps/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace nilcps {

namespace {

constexpr double kRel = 1e-9;

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const int n = int(a.size());
    std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        double d = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[r][c];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

bool coeff_less(const LatticePoint& a, const LatticePoint& b) { return a.coeffs < b.coeffs; }

}  // namespace

// ---------------------------------------------------------------- validation

void SchemeSpec::validate() const {
    if (!field) throw ValidationError("scheme has no field");
    if (field->degree() < 2) throw ValidationError("scheme needs a field of degree >= 2");
    g.validate();
    h.validate();
    const int nn = g.dim();
    if (h.dim() != nn * copies())
        throw ValidationError("H dimension must equal dim(G) * (field degree - 1)");
    // tau is a homomorphism iff H carries one copy of the G bracket per conjugate
    for (int a = 0; a < h.dim(); ++a)
        for (int b = 0; b < h.dim(); ++b)
            for (int c = 0; c < h.dim(); ++c) {
                Rational want = 0;
                if (a / nn == b / nn && b / nn == c / nn) want = g.c(a % nn, b % nn, c % nn);
                if (h.c(a, b, c) != want) throw ValidationError("H brackets do not match the conjugate copies of G");
            }
    if (chart == ModuleChart::HeisenbergMatrix) {
        if (!(nn == 3 && g.brackets().size() == 1 && g.brackets()[0].i == 0 && g.brackets()[0].j == 1 &&
              g.brackets()[0].k == 2 && g.brackets()[0].c == 1))
            throw ValidationError("heisenberg-matrix chart needs [e1,e2]=e3");
    } else {
        for (const auto& b : g.brackets()) {
            Rational half = b.c / 2;
            if (half.get_den() != 1)
                throw ValidationError("module Z[alpha]^n is not closed under the group law in exponential chart");
        }
    }
    if (window.dim != h.dim()) throw ValidationError("window dimension differs from dim(H)");
    if (window.hs.empty()) throw ValidationError("window has no half-spaces");
    for (const auto& hs : window.hs) {
        bool nz = false;
        for (const auto& v : hs.normal) {
            if (!v.is_rational()) throw ValidationError("window half-spaces must be rational");
            nz = nz || !v.is_zero();
        }
        if (!nz) throw ValidationError("window half-space with zero normal");
        if (!hs.offset.is_rational()) throw ValidationError("window half-spaces must be rational");
    }
    if (!window.interior_point()) throw ValidationError("window has empty interior");
    if (!window.is_bounded()) throw ValidationError("window is unbounded");
}

std::vector<HyperplaneH> SchemeSpec::faces() const {
    std::vector<HyperplaneH> f;
    for (const auto& hs : window.hs) f.push_back(hs.boundary());
    return f;
}

// ---------------------------------------------------------------- charts

GroupPoint chart_to_exp(const SchemeSpec& s, const GroupPoint& m) {
    return s.chart == ModuleChart::HeisenbergMatrix ? matrix_to_exp(m) : m;
}

GroupPoint exp_to_chart(const SchemeSpec& s, const GroupPoint& x) {
    return s.chart == ModuleChart::HeisenbergMatrix ? exp_to_matrix(x) : x;
}

LatticePoint lattice_point(const SchemeSpec& s, const std::vector<long>& q) {
    const int n = s.n(), d = s.degree();
    if (int(q.size()) != n * d) throw std::invalid_argument("coefficient vector length mismatch");
    GroupPoint m(n);
    for (int i = 0; i < n; ++i)
        m[i] = ExactScalar(s.field, Rational(q[i * d]), Rational(q[i * d + 1]),
                           d > 2 ? Rational(q[i * d + 2]) : Rational(0));
    LatticePoint lp;
    lp.coeffs = q;
    lp.g_part = chart_to_exp(s, m);
    for (int k = 1; k < d; ++k) {
        GroupPoint mk(n);
        for (int i = 0; i < n; ++i) mk[i] = m[i].conj(k);
        GroupPoint e = chart_to_exp(s, mk);
        lp.h_part.insert(lp.h_part.end(), e.begin(), e.end());
    }
    return lp;
}

std::vector<long> coefficients_of(const SchemeSpec& s, const GroupPoint& g) {
    if (int(g.size()) != s.n()) throw std::invalid_argument("dimension mismatch");
    GroupPoint m = exp_to_chart(s, g);
    std::vector<long> q;
    for (const auto& v : m) {
        if (v.field() != s.field && v.field()->degree() != 1)
            throw FieldMismatch("point lives in a different field");
        for (int j = 0; j < s.degree(); ++j) {
            const Rational& c = v.coeff(j);
            if (c.get_den() != 1 || !c.get_num().fits_slong_p())
                throw std::invalid_argument("point is not in the lattice projection " + point_str(g));
            q.push_back(c.get_num().get_si());
        }
    }
    return q;
}

GroupPoint star_map(const SchemeSpec& s, const GroupPoint& lambda) {
    return lattice_point(s, coefficients_of(s, lambda)).h_part;
}

std::vector<Approx> approx_point(const GroupPoint& p) {
    std::vector<Approx> a;
    a.reserve(p.size());
    for (const auto& v : p) a.push_back(v.approx());
    return a;
}

// ---------------------------------------------------------------- enumeration

std::vector<double> g_box_for_radius(const SchemeSpec& s, const Rational& r) {
    std::vector<double> b;
    for (const auto& w : s.g.weights()) b.push_back(std::pow(r.get_d(), w.get_d()) * (1 + kRel) + kRel);
    return b;
}

std::vector<std::pair<double, double>> bounding_box(const Polytope& p) {
    std::vector<std::pair<double, double>> box;
    for (int i = 0; i < p.dim; ++i) {
        Vec e(p.dim, ExactScalar(0));
        e[i] = 1;
        auto r = p.range(e);
        if (!r) throw std::invalid_argument("region is empty or unbounded");
        double lo = r->first.to_double(), hi = r->second.to_double();
        box.push_back({lo - kRel * (1 + std::fabs(lo)), hi + kRel * (1 + std::fabs(hi))});
    }
    return box;
}

void for_each_candidate(const SchemeSpec& s, const std::vector<double>& gbound,
                        const std::vector<std::pair<double, double>>& hbox,
                        const std::function<void(const std::vector<long>&, const std::vector<Approx>&,
                                                 const std::vector<Approx>&)>& f,
                        const EnumerationOptions& opt) {
    const int n = s.n(), d = s.degree();
    if (int(gbound.size()) != n || int(hbox.size()) != n * (d - 1))
        throw std::invalid_argument("enumeration box dimension mismatch");
    // E[k][j] = sigma^k(alpha)^j
    std::vector<std::vector<double>> E(d, std::vector<double>(d));
    std::vector<std::vector<Approx>> EA(d, std::vector<Approx>(d));
    for (int k = 0; k < d; ++k) {
        ExactScalar a = ExactScalar(s.field, 0, 1).conj(k), p(1);
        for (int j = 0; j < d; ++j) {
            EA[k][j] = p.approx();
            E[k][j] = EA[k][j].v;
            p *= a;
        }
    }
    auto Vinv = invert(E);
    bool heis = s.chart == ModuleChart::HeisenbergMatrix;

    std::vector<long> q(n * d, 0);
    std::vector<std::vector<double>> emb(n, std::vector<double>(d, 0.0));  // embeddings of module coords
    long visited = 0;

    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (++visited > opt.candidate_cap) throw CapExceeded("enumeration candidate cap exceeded");
            if (opt.deadline && (visited & 4095) == 0 && std::chrono::steady_clock::now() > *opt.deadline)
                throw BudgetExceeded("wall-clock budget exceeded during enumeration");
            // rigorous approximations of exponential coordinates
            std::vector<std::vector<Approx>> m(d, std::vector<Approx>(n));
            for (int k = 0; k < d; ++k)
                for (int c = 0; c < n; ++c) {
                    Approx v = approx_of(q[c * d]);
                    for (int j = 1; j < d; ++j)
                        if (q[c * d + j]) v = v + approx_of(q[c * d + j]) * EA[k][j];
                    m[k][c] = v;
                }
            if (heis)
                for (int k = 0; k < d; ++k) m[k][2] = m[k][2] - m[k][0] * m[k][1] * Approx(0.5, 0);
            std::vector<Approx> g = m[0], h;
            for (int k = 1; k < d; ++k) h.insert(h.end(), m[k].begin(), m[k].end());
            f(q, g, h);
            return;
        }
        // shift from the chart: exponential = module - shift
        std::vector<double> shift(d, 0.0);
        if (heis && i == 2)
            for (int k = 0; k < d; ++k) shift[k] = emb[0][k] * emb[1][k] / 2;
        std::vector<double> L(d), U(d);
        L[0] = shift[0] - gbound[i];
        U[0] = shift[0] + gbound[i];
        for (int k = 1; k < d; ++k) {
            const auto& b = hbox[(k - 1) * n + i];
            L[k] = shift[k] + b.first;
            U[k] = shift[k] + b.second;
        }
        for (int k = 0; k < d; ++k) {
            double tol = kRel * (1 + std::fabs(L[k]) + std::fabs(U[k]));
            L[k] -= tol;
            U[k] += tol;
            if (L[k] > U[k]) return;
        }
        std::vector<long> qlo(d), qhi(d);
        for (int j = 0; j < d; ++j) {
            double lo = 0, hi = 0;
            for (int k = 0; k < d; ++k) {
                double a = Vinv[j][k] * L[k], b = Vinv[j][k] * U[k];
                lo += std::min(a, b);
                hi += std::max(a, b);
            }
            double slack = 1e-7 * (1 + std::fabs(lo) + std::fabs(hi));
            lo -= slack;
            hi += slack;
            if (hi - lo > double(opt.coefficient_cap))
                throw CapExceeded("coefficient range exceeds the configured cap");
            qlo[j] = long(std::ceil(lo));
            qhi[j] = long(std::floor(hi));
            if (qlo[j] > qhi[j]) return;
        }
        std::function<void(int, std::vector<double>&)> loop = [&](int j, std::vector<double>& rest) {
            if (j == 0) {
                // q0 enters every embedding with coefficient 1
                double lo = -1e300, hi = 1e300;
                for (int k = 0; k < d; ++k) {
                    lo = std::max(lo, L[k] - rest[k]);
                    hi = std::min(hi, U[k] - rest[k]);
                }
                long a = std::max(qlo[0], long(std::ceil(lo - 1e-9 * (1 + std::fabs(lo)))));
                long b = std::min(qhi[0], long(std::floor(hi + 1e-9 * (1 + std::fabs(hi)))));
                for (long q0 = a; q0 <= b; ++q0) {
                    q[i * d] = q0;
                    for (int k = 0; k < d; ++k) emb[i][k] = q0 + rest[k];
                    rec(i + 1);
                }
                return;
            }
            for (long qj = qlo[j]; qj <= qhi[j]; ++qj) {
                q[i * d + j] = qj;
                std::vector<double> r2 = rest;
                for (int k = 0; k < d; ++k) r2[k] += double(qj) * E[k][j];
                loop(j - 1, r2);
            }
        };
        std::vector<double> rest(d, 0.0);
        loop(d - 1, rest);
        for (int j = 0; j < d; ++j) q[i * d + j] = 0;
    };
    rec(0);
}

namespace {

// filtered |g| < r; exact fallback via the lattice point
bool g_norm_less(const SchemeSpec& s, const std::vector<Approx>& g, const Rational& r,
                 const std::function<GroupPoint()>& exact) {
    bool undecided = false;
    if (s.g.norm() == NormKind::WeightedMax) {
        for (int i = 0; i < s.n(); ++i) {
            double bound = std::pow(r.get_d(), s.g.weights()[i].get_d());
            double av = std::fabs(g[i].v);
            if (av - g[i].e > bound * (1 + 1e-12)) return false;
            if (!(av + g[i].e < bound * (1 - 1e-12))) undecided = true;
        }
        if (!undecided) return true;
    }
    return norm_less(s.g, exact(), r);
}

enum class Where { Inside, Outside, Boundary };

struct ApproxRegion {
    std::vector<std::vector<Approx>> n;
    std::vector<Approx> b;
    explicit ApproxRegion(const Polytope& p) {
        for (const auto& h : p.hs) {
            n.push_back(approx_point(h.normal));
            b.push_back(h.offset.approx());
        }
    }
};

Where locate(const Polytope& p, const ApproxRegion& ar, const std::vector<Approx>& h,
             const std::function<GroupPoint()>& exact) {
    bool undecided = false;
    for (std::size_t i = 0; i < p.hs.size(); ++i) {
        Approx sl = ar.b[i];
        for (std::size_t j = 0; j < h.size(); ++j)
            if (ar.n[i][j].v != 0 || ar.n[i][j].e != 0) sl = sl - ar.n[i][j] * h[j];
        int sg = sl.certain_sign();
        if (sg < 0) return Where::Outside;
        if (sg == 0) undecided = true;
    }
    if (!undecided) return Where::Inside;
    GroupPoint x = exact();
    bool boundary = false;
    for (const auto& hs : p.hs) {
        int sg = hs.slack(x).sign();
        if (sg < 0) return Where::Outside;
        if (sg == 0) boundary = true;
    }
    return boundary ? Where::Boundary : Where::Inside;
}

}  // namespace

std::vector<LatticePoint> enumerate_lattice(const SchemeSpec& s, const Rational& r_G, const Polytope& region_H,
                                            const EnumerationOptions& opt) {
    if (sgn(r_G) <= 0) throw std::invalid_argument("r_G must be positive");
    auto hbox = bounding_box(region_H);
    ApproxRegion ar(region_H);
    std::vector<LatticePoint> out;
    for_each_candidate(
        s, g_box_for_radius(s, r_G), hbox,
        [&](const std::vector<long>& q, const std::vector<Approx>& g, const std::vector<Approx>& h) {
            LatticePoint lp;
            bool built = false;
            auto exact = [&]() -> const LatticePoint& {
                if (!built) {
                    lp = lattice_point(s, q);
                    built = true;
                }
                return lp;
            };
            if (!g_norm_less(s, g, r_G, [&] { return exact().g_part; })) return;
            if (locate(region_H, ar, h, [&] { return exact().h_part; }) == Where::Outside) return;
            out.push_back(exact());
        },
        opt);
    std::sort(out.begin(), out.end(), coeff_less);
    return out;
}

std::vector<LatticePoint> model_set(const SchemeSpec& s, const Rational& R, const EnumerationOptions& opt) {
    if (sgn(R) <= 0) throw std::invalid_argument("R must be positive");
    ApproxRegion ar(s.window);
    std::vector<LatticePoint> out;
    for_each_candidate(
        s, g_box_for_radius(s, R), bounding_box(s.window),
        [&](const std::vector<long>& q, const std::vector<Approx>& g, const std::vector<Approx>& h) {
            LatticePoint lp;
            bool built = false;
            auto exact = [&]() -> const LatticePoint& {
                if (!built) {
                    lp = lattice_point(s, q);
                    built = true;
                }
                return lp;
            };
            if (!g_norm_less(s, g, R, [&] { return exact().g_part; })) return;
            Where w = locate(s.window, ar, h, [&] { return exact().h_part; });
            if (w == Where::Outside) return;
            if (w == Where::Boundary)
                throw RegularityError("window is not Gamma-regular: tau" + point_str(exact().g_part) + " = " +
                                      point_str(exact().h_part) + " lies on the boundary");
            out.push_back(exact());
        },
        opt);
    std::sort(out.begin(), out.end(), coeff_less);
    return out;
}

// ---------------------------------------------------------------- window shifts

TranslatedWindow translated_window(const SchemeSpec& s, const GroupPoint& x) {
    TranslatedWindow tw;
    for (const auto& h : s.window.hs) {
        HalfSpace t = act_on_halfspace(s.h, x, h);
        tw.n_approx.push_back(approx_point(t.normal));
        tw.b_approx.push_back(t.offset.approx());
        tw.hs.push_back(std::move(t));
    }
    return tw;
}

bool TranslatedWindow::contains_open(const std::vector<Approx>& h,
                                     const std::function<GroupPoint()>& exact_point) const {
    GroupPoint x;
    bool have = false;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        Approx sl = b_approx[i];
        for (std::size_t j = 0; j < h.size(); ++j)
            if (n_approx[i][j].v != 0 || n_approx[i][j].e != 0) sl = sl - n_approx[i][j] * h[j];
        int sg = sl.certain_sign();
        if (sg > 0) continue;
        if (sg < 0) return false;
        if (!have) {
            x = exact_point();
            have = true;
        }
        if (hs[i].slack(x).sign() <= 0) return false;
    }
    return true;
}

bool window_shift_membership(const SchemeSpec& s, const GroupPoint& mu_h, const GroupPoint& tau_lambda) {
    return s.window.contains_open(bch_multiply(s.h, mu_h, tau_lambda));
}

bool ww_inverse_contains(const SchemeSpec& s, const GroupPoint& mu) {
    if (int(mu.size()) != s.h.dim()) throw std::invalid_argument("dimension mismatch");
    Polytope both = s.window;
    GroupPoint minv = inverse(mu);
    for (const auto& h : s.window.hs) both.hs.push_back(act_on_halfspace(s.h, minv, h));
    Mat A;
    Vec b;
    both.matrix(A, b);
    return lp_feasible_point(A, b).has_value();
}

std::vector<std::pair<double, double>> ww_inverse_box(const SchemeSpec& s) {
    auto wb = bounding_box(s.window);
    using I = std::pair<double, double>;
    auto mul = [](I a, I b) {
        double c[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
        return I{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    };
    std::vector<I> out(wb.size());
    for (std::size_t k = 0; k < wb.size(); ++k) out[k] = {wb[k].first - wb[k].second, wb[k].second - wb[k].first};
    // w1 w2^-1 = w1 - w2 - 1/2 [w1, w2]
    for (const auto& br : s.h.brackets()) {
        double c = std::fabs(br.c.get_d()) / 2;
        I t1 = mul(wb[br.i], wb[br.j]), t2 = mul(wb[br.j], wb[br.i]);
        double m = c * (std::max(std::fabs(t1.first), std::fabs(t1.second)) +
                        std::max(std::fabs(t2.first), std::fabs(t2.second)));
        out[br.k].first -= m;
        out[br.k].second += m;
    }
    for (auto& iv : out) {
        iv.first -= kRel * (1 + std::fabs(iv.first));
        iv.second += kRel * (1 + std::fabs(iv.second));
    }
    return out;
}

namespace {

struct WWFilter {
    const SchemeSpec& s;
    std::vector<GroupPoint> witnesses;  // vertices and an interior point of W
    explicit WWFilter(const SchemeSpec& sp) : s(sp) {
        witnesses = s.window.vertices();
        if (auto c = s.window.interior_point()) witnesses.push_back(*c);
    }
    bool operator()(const GroupPoint& mu) const {
        for (const auto& w : witnesses)
            if (s.window.contains_closed(bch_multiply(s.h, mu, w))) return true;
        return ww_inverse_contains(s, mu);
    }
};

}  // namespace

std::vector<LatticePoint> slab(const SchemeSpec& s, const Rational& r, const EnumerationOptions& opt) {
    if (sgn(r) <= 0) throw std::invalid_argument("r must be positive");
    WWFilter ww(s);
    std::vector<LatticePoint> out;
    for_each_candidate(
        s, g_box_for_radius(s, r), ww_inverse_box(s),
        [&](const std::vector<long>& q, const std::vector<Approx>& g, const std::vector<Approx>&) {
            LatticePoint lp;
            bool built = false;
            auto exact = [&]() -> const LatticePoint& {
                if (!built) {
                    lp = lattice_point(s, q);
                    built = true;
                }
                return lp;
            };
            if (!g_norm_less(s, g, r, [&] { return exact().g_part; })) return;
            if (!ww(exact().h_part)) return;
            out.push_back(exact());
        },
        opt);
    std::sort(out.begin(), out.end(), coeff_less);
    return out;
}

std::vector<LatticePoint> displacements(const SchemeSpec& s, const LatticePoint& lambda, const Rational& r) {
    if (!s.window.contains_open(lambda.h_part))
        throw std::invalid_argument("lambda is not in the model set");
    std::vector<LatticePoint> out;
    for (const auto& mu : slab(s, r))
        if (window_shift_membership(s, mu.h_part, lambda.h_part)) out.push_back(mu);
    return out;
}

SlabSplit slab_of(const SchemeSpec& s, const std::vector<LatticePoint>& slab_points, const LatticePoint& lambda) {
    if (!s.window.contains_open(lambda.h_part))
        throw std::invalid_argument("lambda is not in the model set");
    SlabSplit sp;
    for (const auto& gm : slab_points) {
        // gamma^-1 lambda in the model set  <=>  tau(gamma)^-1 tau(lambda) in the open window
        if (window_shift_membership(s, inverse(gm.h_part), lambda.h_part)) sp.in.push_back(gm);
        else sp.out.push_back(gm);
    }
    return sp;
}

SlabSplit slab_of(const SchemeSpec& s, const LatticePoint& lambda, const Rational& r) {
    return slab_of(s, slab(s, r), lambda);
}

Rational growth_ratio(const SchemeSpec& s, const Rational& r, const Polytope& region_H) {
    if (region_H.is_empty()) return 0;
    long count = 0;
    ApproxRegion ar(region_H);
    for_each_candidate(
        s, g_box_for_radius(s, r), bounding_box(region_H),
        [&](const std::vector<long>& q, const std::vector<Approx>& g, const std::vector<Approx>& h) {
            std::optional<LatticePoint> lp;
            auto exact = [&]() -> const LatticePoint& {
                if (!lp) lp = lattice_point(s, q);
                return *lp;
            };
            if (!g_norm_less(s, g, r, [&] { return exact().g_part; })) return;
            if (locate(region_H, ar, h, [&] { return exact().h_part; }) == Where::Outside) return;
            ++count;
        });
    return Rational(count) / ball_volume(s.g, r);
}

}  // namespace nilcps

namespace nilcps {

void for_each_model_point(const SchemeSpec& s, const std::vector<double>& gbound,
                          const std::function<void(const ModelCandidate&)>& f, const EnumerationOptions& opt) {
    ApproxRegion ar(s.window);
    for_each_candidate(
        s, gbound, bounding_box(s.window),
        [&](const std::vector<long>& q, const std::vector<Approx>& g, const std::vector<Approx>& h) {
            std::optional<LatticePoint> lp;
            std::function<const LatticePoint&()> exact = [&]() -> const LatticePoint& {
                if (!lp) lp = lattice_point(s, q);
                return *lp;
            };
            Where w = locate(s.window, ar, h, [&] { return exact().h_part; });
            if (w == Where::Outside) return;
            if (w == Where::Boundary)
                throw RegularityError("window is not Gamma-regular at " + point_str(exact().g_part));
            f(ModelCandidate{q, g, h, exact});
        },
        opt);
}

bool filtered_norm_less(const SchemeSpec& s, const std::vector<Approx>& g, const Rational& r,
                        const std::function<GroupPoint()>& exact) {
    return g_norm_less(s, g, r, exact);
}

std::vector<LatticePoint> model_set_box(const SchemeSpec& s, const std::vector<double>& gbound,
                                        const EnumerationOptions& opt) {
    std::vector<LatticePoint> out;
    for_each_model_point(s, gbound, [&](const ModelCandidate& c) { out.push_back(c.exact()); }, opt);
    std::sort(out.begin(), out.end(), coeff_less);
    return out;
}

namespace {

// half-widths of the box around lambda containing {u lambda : |u| < r}
std::vector<double> ball_halfwidths(const GroupSpec& g, const std::vector<double>& lam, double r) {
    std::vector<double> w(g.dim());
    std::vector<double> rp(g.dim());
    for (int i = 0; i < g.dim(); ++i) rp[i] = std::pow(r, g.weights()[i].get_d());
    for (int k = 0; k < g.dim(); ++k) w[k] = rp[k];
    for (const auto& b : g.brackets()) {
        double c = std::fabs(b.c.get_d()) / 2;
        w[b.k] += c * (rp[b.i] * std::fabs(lam[b.j]) + rp[b.j] * std::fabs(lam[b.i]));
    }
    for (auto& x : w) x = x * (1 + 1e-9) + 1e-9;
    return w;
}

}  // namespace

std::vector<double> NeighbourIndex::covering_box(const SchemeSpec& s, const Rational& R, const Rational& r) {
    std::vector<double> lam = g_box_for_radius(s, R);
    auto w = ball_halfwidths(s.g, lam, r.get_d());
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += lam[k];
    return w;
}

std::string NeighbourIndex::cell_key(const std::vector<long>& c) const {
    return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(long));
}

NeighbourIndex::NeighbourIndex(const SchemeSpec& s, std::vector<LatticePoint> pts, const Rational& r)
    : s_(s), pts_(std::move(pts)), r_(r) {
    if (!s.g.is_two_step()) throw ValidationError("neighbour search needs a 2-step group");
    for (const auto& w : s.g.weights()) cell_.push_back(std::max(std::pow(r.get_d(), w.get_d()), 1e-6));
    std::vector<long> c(s.n());
    for (int idx = 0; idx < int(pts_.size()); ++idx) {
        std::vector<double> d;
        for (const auto& v : pts_[idx].g_part) d.push_back(v.to_double());
        for (int k = 0; k < s.n(); ++k) c[k] = long(std::floor(d[k] / cell_[k]));
        grid_[cell_key(c)].push_back(idx);
        gd_.push_back(std::move(d));
    }
}

std::vector<std::vector<long>> NeighbourIndex::patch_key(const GroupPoint& lambda) const {
    const int n = s_.n();
    std::vector<double> lam;
    for (const auto& v : lambda) lam.push_back(v.to_double());
    auto w = ball_halfwidths(s_.g, lam, r_.get_d());
    std::vector<long> lo(n), hi(n), c(n);
    for (int k = 0; k < n; ++k) {
        lo[k] = long(std::floor((lam[k] - w[k]) / cell_[k]));
        hi[k] = long(std::floor((lam[k] + w[k]) / cell_[k]));
    }
    GroupPoint linv = inverse(lambda);
    double rd = r_.get_d();
    std::vector<std::vector<long>> key;
    c = lo;
    while (true) {
        auto it = grid_.find(cell_key(c));
        if (it != grid_.end())
            for (int idx : it->second) {
                // double prefilter on nu lambda^-1 = nu - lambda - [nu, lambda]/2
                const auto& nu = gd_[idx];
                std::vector<double> d(n);
                for (int k = 0; k < n; ++k) d[k] = nu[k] - lam[k];
                for (const auto& b : s_.g.brackets())
                    d[b.k] -= b.c.get_d() / 2 * (nu[b.i] * lam[b.j] - nu[b.j] * lam[b.i]);
                bool far = false;
                for (int k = 0; k < n && !far; ++k) {
                    double bound = std::pow(rd, s_.g.weights()[k].get_d());
                    if (std::fabs(d[k]) > bound * (1 + 1e-6) + 1e-6 * (1 + std::fabs(nu[k]) + std::fabs(lam[k])))
                        far = s_.g.norm() == NormKind::WeightedMax;
                }
                if (far) continue;
                GroupPoint u = bch_multiply(s_.g, pts_[idx].g_part, linv);
                if (!norm_less(s_.g, u, r_)) continue;
                key.push_back(coefficients_of(s_, u));
            }
        int k = 0;
        while (k < n && c[k] == hi[k]) {
            c[k] = lo[k];
            ++k;
        }
        if (k == n) break;
        ++c[k];
    }
    std::sort(key.begin(), key.end());
    return key;
}

FlcResult check_flc(const SchemeSpec& s, const Rational& R, const Rational& r) {
    NeighbourIndex idx(s, model_set_box(s, NeighbourIndex::covering_box(s, 2 * R, r)), r);
    std::set<std::vector<std::vector<long>>> small, big;
    for (const auto& p : idx.points()) {
        if (!norm_less(s.g, p.g_part, 2 * R)) continue;
        auto key = idx.patch_key(p.g_part);
        if (norm_less(s.g, p.g_part, R)) small.insert(key);
        big.insert(std::move(key));
    }
    FlcResult res;
    res.count = long(small.size());
    res.count_doubled = long(big.size());
    res.saturated = res.count == res.count_doubled;
    return res;
}

}  // namespace nilcps
