#include "nilcps/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "nilcps/arrangements.hpp"
#include "nilcps/complexity.hpp"
#include "nilcps/config.hpp"

namespace nilcps::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string dec(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::vector<Rational> parse_grid(const std::string& text) {
    std::vector<Rational> g;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Rational r;
        try {
            r = parse_rational(item);
        } catch (const std::exception& e) {
            throw UsageError("--r-grid: " + std::string(e.what()));
        }
        if (sgn(r) <= 0) throw UsageError("--r-grid: radii must be positive");
        if (!g.empty() && !(g.back() < r)) throw UsageError("--r-grid must be strictly increasing");
        g.push_back(r);
    }
    if (g.empty()) throw UsageError("--r-grid is empty");
    return g;
}

Rational parse_positive(const std::string& flag, const std::string& text) {
    Rational r;
    try {
        r = parse_rational(text);
    } catch (const std::exception& e) {
        throw UsageError(flag + ": " + e.what());
    }
    if (sgn(r) <= 0) throw UsageError(flag + " must be positive");
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
}

struct Budget {
    std::optional<Clock::time_point> deadline;
    explicit Budget(double seconds) {
        if (seconds > 0) deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                       std::chrono::duration<double>(seconds));
    }
    bool expired() const { return deadline && Clock::now() > *deadline; }
};

long elapsed_ms(Clock::time_point t0) {
    return long(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count());
}

std::string fit_footer(const std::vector<std::pair<double, double>>& pts, const std::string& which) {
    if (pts.size() < 3) return "fit unavailable points=" + std::to_string(pts.size()) + " rows=" + which;
    auto f = exponent_fit(pts);
    return "fit slope=" + dec(f.slope) + " intercept=" + dec(f.intercept) + " residual=" + dec(f.residual) +
           " points=" + std::to_string(pts.size()) + " rows=" + which;
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    std::string scheme, out, radius;
};

int cmd_generate(const GenerateOpts& o, std::ostream& out, std::ostream& err) {
    auto s = load_scheme(o.scheme);
    Rational R = parse_positive("--sample-radius", o.radius);
    auto pts = model_set(s, R);
    CsvTable t;
    t.kind = "model-set";
    const int n = s.n(), d = s.degree();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) t.columns.push_back("q" + std::to_string(i + 1) + "_" + std::to_string(j));
    for (int i = 0; i < n; ++i) t.columns.push_back("g" + std::to_string(i + 1));
    for (int k = 0; k < s.h.dim(); ++k) t.columns.push_back("h" + std::to_string(k + 1));
    for (const auto& p : pts) {
        std::vector<std::string> row;
        for (long q : p.coeffs) row.push_back(std::to_string(q));
        for (const auto& v : p.g_part) row.push_back(dec(v.to_double()));
        for (const auto& v : p.h_part) row.push_back(dec(v.to_double()));
        t.rows.push_back(std::move(row));
    }
    t.footer.push_back("scheme=" + s.name + " radius=" + to_string(R) + " points=" + std::to_string(pts.size()));
    if (n == 1 && pts.size() > 1) {
        // distinct gaps between consecutive points, compared exactly
        std::vector<ExactScalar> xs;
        for (const auto& p : pts) xs.push_back(p.g_part[0]);
        std::sort(xs.begin(), xs.end());
        std::vector<ExactScalar> gaps;
        for (std::size_t i = 1; i < xs.size(); ++i) gaps.push_back(xs[i] - xs[i - 1]);
        std::sort(gaps.begin(), gaps.end());
        gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
        std::string g = "gaps=" + std::to_string(gaps.size());
        for (const auto& v : gaps) g += " " + v.str();
        t.footer.push_back(g);
    }
    emit(write_csv(t), o.out, out);
    err << "[generate] " << pts.size() << " points with |g| < " << to_string(R) << "\n";
    return kOk;
}

// ---------------------------------------------------------------- slab

struct GridOpts {
    std::string scheme, out, grid = "1,2,4";
    double budget = 0;
    bool no_timing = false;
};

int cmd_slab(const GridOpts& o, std::ostream& out, std::ostream& err) {
    auto s = load_scheme(o.scheme);
    auto grid = parse_grid(o.grid);
    Budget budget(o.budget);
    EnumerationOptions opt;
    opt.deadline = budget.deadline;
    CsvTable t;
    t.kind = "slab";
    t.columns = {"r", "slab_size", "ball_volume", "ratio", "wall_time_ms"};
    std::vector<std::pair<double, double>> pts;
    std::string status = "status=complete";
    int code = kOk;
    for (const auto& r : grid) {
        auto t0 = Clock::now();
        std::vector<LatticePoint> sl;
        try {
            if (budget.expired()) throw BudgetExceeded("budget exhausted before r=" + to_string(r));
            sl = slab(s, r, opt);
        } catch (const BudgetExceeded& e) {
            status = "status=partial reason=budget";
            code = kBudget;
            err << "[slab] " << e.what() << "\n";
            break;
        }
        Rational vol = ball_volume(s.g, r);
        long ms = elapsed_ms(t0);
        t.rows.push_back({to_string(r), std::to_string(sl.size()), dec(vol.get_d()),
                          dec(Rational(Rational(long(sl.size())) / vol).get_d()),
                          o.no_timing ? "NA" : std::to_string(ms)});
        pts.push_back({r.get_d(), double(sl.size())});
        err << "[slab] r=" << to_string(r) << " size=" << sl.size() << " (" << ms << " ms)\n";
    }
    t.footer.push_back("scheme=" + s.name + " predicted_exponent=" + to_string(s.g.homdim()));
    t.footer.push_back(fit_footer(pts, "all"));
    t.footer.push_back(status);
    emit(write_csv(t), o.out, out);
    return code;
}

// ---------------------------------------------------------------- complexity

struct ComplexityOpts {
    GridOpts base;
    std::string radius;
    int doublings = 4;
    long cap = 2000;
    std::uint64_t seed = 1;
    int samples = 10000;
    std::string bounds = "both";
};

int cmd_complexity(const ComplexityOpts& o, std::ostream& out, std::ostream& err) {
    auto s = load_scheme(o.base.scheme);
    auto grid = parse_grid(o.base.grid);
    if (o.cap <= 0) throw UsageError("--cap must be positive");
    if (o.doublings < 0) throw UsageError("--max-doublings must be non-negative");
    if (o.bounds != "both" && o.bounds != "upper" && o.bounds != "lower" && o.bounds != "none")
        throw UsageError("--bounds must be both, upper, lower or none");
    std::optional<Rational> R0;
    if (!o.radius.empty()) R0 = parse_positive("--sample-radius", o.radius);
    Budget budget(o.base.budget);
    EnumerationOptions opt;
    opt.deadline = budget.deadline;
    const bool want_upper = o.bounds == "both" || o.bounds == "upper";
    const bool want_lower = o.bounds == "both" || o.bounds == "lower";

    CsvTable t;
    t.kind = "census";
    t.columns = {"r",           "p_hat",        "saturated",       "lower_bound",   "upper_bound",
                 "slab_size",   "wall_time_ms", "r_sample",        "lower_certified", "upper_planes"};
    t.footer.push_back("scheme=" + s.name + " predicted_exponent=" + to_string(s.g.homdim() * s.h.dim()));

    std::optional<WindowParameters> wp;
    std::optional<GoodPair> gp;
    if (want_lower) {
        wp = window_parameters(s);
        GoodPairOptions gpo;
        gpo.seed = o.seed;
        gpo.samples = o.samples;
        try {
            gp = good_pair_search(s, *wp, gpo);
            t.footer.push_back("good_pair k=" + to_string(gp->k) + " h=" + to_string(gp->h) + " I_W=" +
                               to_string(wp->I_W) + " O_W=" + dec(wp->O_W) + " F_W=" + dec(wp->F_W));
        } catch (const GoodPairFailure& e) {
            t.footer.push_back(std::string("good_pair unavailable: ") + e.what());
        }
    }

    std::vector<std::pair<double, double>> sat_pts, all_pts;
    std::string status = "status=complete";
    int code = kOk;
    for (const auto& r : grid) {
        auto t0 = Clock::now();
        try {
            if (budget.expired()) throw BudgetExceeded("budget exhausted before r=" + to_string(r));
            auto sl = slab(s, r, opt);
            Rational R = R0 ? *R0 : Rational(4 * r);
            if (!(R > r)) R = 2 * r;
            CensusResult c;
            for (int it = 0;; ++it) {
                c = complexity_census(s, sl, R, opt);
                err << "[complexity] r=" << to_string(r) << " R=" << to_string(R) << " p_hat=" << c.p_hat
                    << " doubled=" << c.p_hat_doubled << "\n";
                if (c.saturated || it >= o.doublings) break;
                R *= 2;
            }
            std::string upper = "NA", planes = "NA", lower = "NA", certified = "NA";
            if (want_upper) {
                try {
                    auto ub = upper_bound_regions(s, sl, std::size_t(o.cap));
                    upper = std::to_string(ub.regions);
                    planes = std::to_string(ub.planes);
                } catch (const ArrangementCapExceeded& e) {
                    err << "[complexity] upper bound omitted: " << e.what() << "\n";
                    code = kBudget;
                    t.footer.push_back("upper_bound omitted at r=" + to_string(r) + ": cap exceeded");
                }
            }
            if (want_lower && gp) {
                auto lb = lower_bound_regions(s, *wp, r, *gp, Rational(1, 101), o.seed);
                lower = std::to_string(lb.regions);
                certified = lb.certified ? "yes" : "no";
                for (const auto& note : lb.notes) t.footer.push_back("r=" + to_string(r) + " " + note);
            }
            long ms = elapsed_ms(t0);
            t.rows.push_back({to_string(r), std::to_string(c.p_hat), c.saturated ? "yes" : "no", lower, upper,
                              std::to_string(sl.size()), o.base.no_timing ? "NA" : std::to_string(ms), to_string(R),
                              certified, planes});
            all_pts.push_back({r.get_d(), double(c.p_hat)});
            if (c.saturated) sat_pts.push_back({r.get_d(), double(c.p_hat)});
            else t.footer.push_back("unsaturated census at r=" + to_string(r) + ": p_hat is a lower estimate");
        } catch (const BudgetExceeded& e) {
            status = "status=partial reason=budget";
            code = kBudget;
            err << "[complexity] " << e.what() << "\n";
            break;
        }
    }
    t.footer.push_back(fit_footer(sat_pts, "saturated"));
    t.footer.push_back(status);
    emit(write_csv(t), o.base.out, out);
    return code;
}

// ---------------------------------------------------------------- regions

struct RegionsOpts {
    std::string arrangement, body, out;
    long cap = 20;
};

int cmd_regions(const RegionsOpts& o, std::ostream& out, std::ostream& err) {
    if (o.cap <= 0) throw UsageError("--cap must be positive");
    Arrangement arr = parse_arrangement(read_file(o.arrangement));
    Polytope B = parse_body(read_file(o.body));
    std::ostringstream rep;
    int code = kOk;
    rep << "# nilcps regions report v1\n";
    rep << "dimension: " << arr.dim << "\n";
    rep << "hyperplanes: " << arr.size() << "\n";
    auto regions = count_regions_in_B(arr, B);
    rep << "regions: " << regions << "\n";
    rep << "vertices_in_body: " << vertices_in_B(arr, &B).size() << "\n";
    rep << "schlafli_bound: " << schlafli_bound(std::int64_t(arr.size()), arr.dim).get_str() << "\n";
    try {
        auto chi = characteristic_polynomial_wrt_B(arr, B, std::size_t(o.cap));
        rep << "chi:";
        for (auto c : chi) rep << " " << c;
        rep << "  # coefficient of t^0 .. t^d\n";
        auto from_chi = regions_from_chi(chi, arr.dim);
        rep << "regions_from_chi: " << from_chi << "\n";
        rep << "oracle: " << (from_chi == regions ? "pass" : "FAIL") << "\n";
        auto flats = flats_in_B(arr, B, std::size_t(o.cap));
        rep << "flats:";
        for (auto f : flats) rep << " " << f;
        rep << "  # by dimension 0 .. d\n";
    } catch (const ArrangementCapExceeded& e) {
        rep << "chi: omitted (" << e.what() << ")\n";
        rep << "regions_from_chi: omitted\n";
        rep << "oracle: omitted\n";
        rep << "flats: omitted\n";
        code = kBudget;
    }
    emit(rep.str(), o.out, out);
    err << "[regions] " << arr.size() << " hyperplanes, " << regions << " regions\n";
    return code;
}

// ---------------------------------------------------------------- beck-check

struct BeckOpts {
    std::string out;
    int instances = 1000, max_lines = 40, grid_m = 128;
    std::uint64_t seed = 1;
};

Arrangement random_lines(std::mt19937_64& rng, int n) {
    Arrangement arr;
    arr.dim = 2;
    std::set<std::vector<std::string>> seen;
    while (int(arr.planes.size()) < n) {
        long a = long(rng() % 9) - 4, b = long(rng() % 9) - 4, c = long(rng() % 13) - 6;
        if (a == 0 && b == 0) continue;
        HyperplaneH P({ExactScalar(a), ExactScalar(b)}, ExactScalar(c));
        HyperplaneH q = P.canonical();
        std::vector<std::string> key{q.normal[0].str(), q.normal[1].str(), q.offset.str()};
        if (!seen.insert(key).second) continue;
        arr.planes.push_back(P);
    }
    return arr;
}

int cmd_beck(const BeckOpts& o, std::ostream& out, std::ostream& err) {
    if (o.instances < 0 || o.max_lines < 2 || o.grid_m < 1) throw UsageError("beck-check parameters out of range");
    std::mt19937_64 rng(o.seed);
    CsvTable t;
    t.kind = "beck";
    t.columns = {"instance", "lines", "vertices", "max_multiplicity", "pairs_ratio", "large_k_ratio",
                 "st_ratio", "incidence_ratio", "violations"};
    long total_viol = 0;
    double worst[4] = {0, 0, 0, 0};
    for (int inst = 0; inst < o.instances; ++inst) {
        int n = 2 + int(rng() % std::uint64_t(o.max_lines - 1));
        auto arr = random_lines(rng, n);
        auto pr = incidence_profile(arr, nullptr);
        auto rep = check_beck_bounds(pr, n);
        auto st = szemeredi_trotter_check(pr, n);
        double ratio[3] = {0, 0, 0};
        for (const auto& c : rep.checks) {
            int idx = c.bound == "pairs" ? 0 : c.bound == "large-k" ? 1 : 2;
            if (c.limit > 0) ratio[idx] = std::max(ratio[idx], double(c.value) / c.limit);
        }
        double inc = st.limit > 0 ? double(st.incidences) / st.limit : 0;
        int maxa = 0;
        for (const auto& v : pr.vertices) maxa = std::max(maxa, v.a);
        int viol = rep.violations() + (st.pass ? 0 : 1);
        total_viol += viol;
        for (int k = 0; k < 3; ++k) worst[k] = std::max(worst[k], ratio[k]);
        worst[3] = std::max(worst[3], inc);
        t.rows.push_back({std::to_string(inst), std::to_string(n), std::to_string(pr.vertices.size()),
                          std::to_string(maxa), dec(ratio[0]), dec(ratio[1]), dec(ratio[2]), dec(inc),
                          std::to_string(viol)});
        if ((inst + 1) % 100 == 0) err << "[beck-check] " << inst + 1 << " instances\n";
    }
    t.footer.push_back("instances=" + std::to_string(o.instances) + " violations=" + std::to_string(total_viol));
    t.footer.push_back("extremal pairs_ratio=" + dec(worst[0]) + " large_k_ratio=" + dec(worst[1]) +
                       " st_ratio=" + dec(worst[2]) + " incidence_ratio=" + dec(worst[3]));

    // grid family: m vertical and m horizontal lines in a box
    const int m = o.grid_m;
    Arrangement g;
    g.dim = 2;
    for (int f = 0; f < 2; ++f)
        for (int i = 0; i < m; ++i) {
            std::vector<ExactScalar> nrm{ExactScalar(f == 0 ? 1 : 0), ExactScalar(f == 0 ? 0 : 1)};
            g.planes.emplace_back(nrm, ExactScalar(i));
            g.family.push_back(f + 1);
        }
    Polytope box = Polytope::box({ExactScalar(-1), ExactScalar(-1)}, {ExactScalar(m), ExactScalar(m)});
    auto grid_res = beck_family_check(g, box, Rational(1, 101), o.seed);
    t.footer.push_back("grid m=" + std::to_string(m) + " vertices=" + std::to_string(grid_res.vertex_count) +
                       " required=" + to_string(grid_res.required) + " c2=" + to_string(grid_res.constant) +
                       " certified=" + (grid_res.certified ? "yes" : "no") +
                       (grid_res.violation.empty() ? "" : " violation=" + grid_res.violation));

    // pencil family: every line of both families passes through the origin
    Arrangement p;
    p.dim = 2;
    for (int f = 0; f < 2; ++f)
        for (int i = 1; i <= m; ++i) {
            std::vector<ExactScalar> nrm{ExactScalar(f == 0 ? i : 1), ExactScalar(f == 0 ? 1 : -i)};
            p.planes.emplace_back(nrm, ExactScalar(0));
            p.family.push_back(f + 1);
        }
    auto pen = beck_family_check(p, box, Rational(1, 101), o.seed);
    t.footer.push_back("pencil m=" + std::to_string(m) + " vertices=" + std::to_string(pen.vertex_count) +
                       " certified=" + (pen.certified ? "yes" : "no") +
                       (pen.violation.empty() ? "" : " violation=" + pen.violation));
    emit(write_csv(t), o.out, out);
    err << "[beck-check] " << o.instances << " instances, " << total_viol << " violations\n";
    return kOk;
}

// ---------------------------------------------------------------- fit

struct FitOpts {
    std::string in, column;
    bool all_rows = false;
};

int cmd_fit(const FitOpts& o, std::ostream& out, std::ostream&) {
    CsvTable t;
    try {
        t = read_csv(read_file(o.in));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(o.in + ": " + e.what());
    }
    std::string col = o.column;
    if (col.empty()) col = t.kind == "census" ? "p_hat" : t.kind == "slab" ? "slab_size" : "";
    auto find = [&](const std::string& name) {
        auto it = std::find(t.columns.begin(), t.columns.end(), name);
        if (it == t.columns.end()) throw UsageError("column '" + name + "' not in " + t.kind + " csv");
        return std::size_t(it - t.columns.begin());
    };
    std::size_t rc = find("r"), vc = find(col);
    std::optional<std::size_t> sc;
    if (t.kind == "census" && !o.all_rows) sc = find("saturated");
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : t.rows) {
        if (sc && row[*sc] != "yes") continue;
        if (row[vc] == "NA") continue;
        pts.push_back({parse_rational(row[rc]).get_d(), std::stod(row[vc])});
    }
    Fit f;
    try {
        f = exponent_fit(pts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    out << "slope=" << dec(f.slope) << " intercept=" << dec(f.intercept) << " residual=" << dec(f.residual)
        << " points=" << pts.size() << "\n";
    return kOk;
}

// ---------------------------------------------------------------- suite

struct SuiteOpts {
    std::string out_dir;
    std::string schemes;
    std::uint64_t seed = 1;
};

// the bundled experiments; wall times are written as NA so reruns compare byte for byte
std::vector<std::pair<std::string, std::vector<std::string>>> suite_jobs(const SuiteOpts& o) {
    auto sch = [&](const char* n) { return o.schemes + "/" + n + ".json"; };
    std::string seed = std::to_string(o.seed);
    return {
        {"fibonacci-model-set.csv", {"generate", "--scheme", sch("fibonacci"), "--sample-radius", "50"}},
        {"heisenberg-slab.csv", {"slab", "--scheme", sch("heisenberg"), "--r-grid", "1,2,3,4,5", "--no-timing"}},
        {"fibonacci-census.csv",
         {"complexity", "--scheme", sch("fibonacci"), "--r-grid", "2,4,8,16,32", "--seed", seed, "--no-timing"}},
        {"planar-census.csv",
         {"complexity", "--scheme", sch("planar"), "--r-grid", "1,2,3", "--seed", seed, "--no-timing"}},
        {"cubic-plane-census.csv",
         {"complexity", "--scheme", sch("cubic-plane"), "--r-grid", "4,8,16", "--max-doublings", "8", "--seed", seed,
          "--no-timing"}},
        {"heisenberg-census.csv",
         {"complexity", "--scheme", sch("heisenberg"), "--r-grid", "1,3/2", "--max-doublings", "2", "--seed", seed,
          "--samples", "2000", "--no-timing"}},
        {"beck.csv", {"beck-check", "--instances", "200", "--seed", seed}},
    };
}

int cmd_suite(const SuiteOpts& o, std::ostream&, std::ostream& err) {
    if (o.out_dir.empty()) throw UsageError("--out-dir is required");
    int worst = kOk;
    for (const auto& [file, args] : suite_jobs(o)) {
        std::vector<std::string> a = args;
        a.push_back("--out");
        a.push_back(o.out_dir + "/" + file);
        std::ostringstream sink;
        err << "[suite] " << file << "\n";
        int code = run(a, sink, err);
        if (code == kValidation) return code;
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cut-and-project model sets in 2-step nilpotent groups"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* g = app.add_subcommand("generate", "write the model set in a ball as CSV");
    g->add_option("--scheme", gen.scheme, "scheme JSON file")->required();
    g->add_option("--sample-radius", gen.radius, "ball radius R (rational)")->required();
    g->add_option("--out", gen.out, "output file (default stdout)");

    GridOpts sl;
    auto* s = app.add_subcommand("slab", "slab sizes over an r grid with a growth fit");
    s->add_option("--scheme", sl.scheme)->required();
    s->add_option("--r-grid", sl.grid, "comma-separated increasing rationals");
    s->add_option("--out", sl.out);
    s->add_option("--budget-seconds", sl.budget);
    s->add_flag("--no-timing", sl.no_timing, "write NA instead of wall times");

    ComplexityOpts cx;
    auto* c = app.add_subcommand("complexity", "saturating census with region bounds");
    c->add_option("--scheme", cx.base.scheme)->required();
    c->add_option("--r-grid", cx.base.grid);
    c->add_option("--sample-radius", cx.radius, "first census radius (default 4r)");
    c->add_option("--max-doublings", cx.doublings);
    c->add_option("--cap", cx.cap, "hyperplane cap for the upper bound");
    c->add_option("--seed", cx.seed);
    c->add_option("--samples", cx.samples, "conjugation samples for the good pair");
    c->add_option("--bounds", cx.bounds, "both, upper, lower or none");
    c->add_option("--out", cx.base.out);
    c->add_option("--budget-seconds", cx.base.budget);
    c->add_flag("--no-timing", cx.base.no_timing);

    RegionsOpts rg;
    auto* r = app.add_subcommand("regions", "region count, chi and flats of an arrangement in a body");
    r->add_option("--arrangement", rg.arrangement)->required();
    r->add_option("--body", rg.body)->required();
    r->add_option("--cap", rg.cap, "largest arrangement for chi and flats");
    r->add_option("--out", rg.out);

    BeckOpts bk;
    auto* b = app.add_subcommand("beck-check", "randomized Beck and Szemeredi-Trotter campaign");
    b->add_option("--instances", bk.instances);
    b->add_option("--max-lines", bk.max_lines);
    b->add_option("--grid-m", bk.grid_m);
    b->add_option("--seed", bk.seed);
    b->add_option("--out", bk.out);

    FitOpts ft;
    auto* f = app.add_subcommand("fit", "log-log fit of a census or slab CSV");
    f->add_option("--in", ft.in)->required();
    f->add_option("--column", ft.column);
    f->add_flag("--all-rows", ft.all_rows, "include unsaturated census rows");

    SuiteOpts su;
    su.schemes = NILCPS_DEFAULT_SCHEMES;
    auto* u = app.add_subcommand("suite", "run the bundled experiments into a directory");
    u->add_option("--out-dir", su.out_dir)->required();
    u->add_option("--schemes", su.schemes, "directory holding the bundled scheme files");
    u->add_option("--seed", su.seed);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        if (*g) return cmd_generate(gen, out, err);
        if (*s) return cmd_slab(sl, out, err);
        if (*c) return cmd_complexity(cx, out, err);
        if (*r) return cmd_regions(rg, out, err);
        if (*b) return cmd_beck(bk, out, err);
        if (*f) return cmd_fit(ft, out, err);
        if (*u) return cmd_suite(su, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const RegularityError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const ArrangementCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}

}  // namespace nilcps::cli
