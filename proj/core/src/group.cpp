#include "nilcps/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace nilcps {

GroupSpec::GroupSpec(int n, std::vector<Rational> weights, std::vector<Bracket> brackets, NormKind norm)
    : n_(n), weights_(std::move(weights)), norm_(norm) {
    if (n < 1) throw ValidationError("group dimension must be >= 1");
    if (int(weights_.size()) != n) throw ValidationError("weights length differs from dimension");
    table_.assign(std::size_t(n) * n * n, Rational(0));
    std::vector<char> set(std::size_t(n) * n * n, 0);
    for (const auto& b : brackets) {
        if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= n || b.j >= n || b.k >= n)
            throw ValidationError("bracket index out of range");
        if (b.i == b.j) {
            if (sgn(b.c) != 0) throw ValidationError("antisymmetry violated: [e_i, e_i] != 0");
            continue;
        }
        auto idx = [&](int i, int j, int k) { return (std::size_t(i) * n + j) * n + k; };
        std::size_t a = idx(b.i, b.j, b.k), r = idx(b.j, b.i, b.k);
        if (set[a] && table_[a] != b.c) throw ValidationError("conflicting bracket entries");
        if (set[r] && table_[r] != -b.c) throw ValidationError("antisymmetry violated");
        table_[a] = b.c;
        table_[r] = -b.c;
        set[a] = set[r] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (sgn(c(i, j, k)) != 0) brackets_.push_back({i, j, k, c(i, j, k)});
    two_step_ = compute_two_step();
}

GroupSpec GroupSpec::abelian(int n) { return GroupSpec(n, std::vector<Rational>(n, Rational(1)), {}); }

GroupSpec GroupSpec::heisenberg(NormKind norm) {
    return GroupSpec(3, {Rational(1), Rational(1), Rational(2)}, {{0, 1, 2, Rational(1)}}, norm);
}

GroupSpec GroupSpec::filiform4() {
    return GroupSpec(4, {Rational(1), Rational(1), Rational(2), Rational(3)},
                     {{0, 1, 2, Rational(1)}, {0, 2, 3, Rational(1)}});
}

Rational GroupSpec::homdim() const {
    Rational s = 0;
    for (const auto& w : weights_) s += w;
    return s;
}

bool GroupSpec::jacobi_holds() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    Rational s = 0;
                    for (int m = 0; m < n_; ++m) {
                        s += c(j, k, m) * c(i, m, l);
                        s += c(k, i, m) * c(j, m, l);
                        s += c(i, j, m) * c(k, m, l);
                    }
                    if (sgn(s) != 0) return false;
                }
    return true;
}

bool GroupSpec::dilation_compatible() const {
    for (const auto& b : brackets_)
        if (weights_[b.k] != weights_[b.i] + weights_[b.j]) return false;
    return true;
}

bool GroupSpec::compute_two_step() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = j + 1; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    Rational s = 0;
                    for (int m = 0; m < n_; ++m)
                        if (sgn(c(j, k, m)) != 0) s += c(j, k, m) * c(i, m, l);
                    if (sgn(s) != 0) return false;
                }
    return true;
}

void GroupSpec::validate() const {
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (sgn(weights_[i]) <= 0) throw ValidationError("weights must be positive");
        if (i && weights_[i] < weights_[i - 1]) throw ValidationError("weights must be non-decreasing");
    }
    if (!jacobi_holds()) throw ValidationError("Jacobi identity fails");
    if (!dilation_compatible()) throw ValidationError("bracket incompatible with dilation weights");
    if (!is_two_step()) throw ValidationError("group is not 2-step nilpotent (crooked)");
    if (norm_ == NormKind::Koranyi && !koranyi_layout())
        throw ValidationError("koranyi norm needs the Heisenberg layout");
}

bool GroupSpec::koranyi_layout() const {
    return n_ == 3 && weights_[0] == 1 && weights_[1] == 1 && weights_[2] == 2 && brackets_.size() == 1 &&
           brackets_[0].i == 0 && brackets_[0].j == 1 && brackets_[0].k == 2;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.n_ == b.n_ && a.weights_ == b.weights_ && a.table_ == b.table_ && a.norm_ == b.norm_;
}

GroupPoint identity(const GroupSpec& spec) { return GroupPoint(spec.dim(), ExactScalar(0)); }

GroupPoint make_point(std::initializer_list<long> v) {
    GroupPoint p;
    for (long x : v) p.emplace_back(x);
    return p;
}

static void check_dim(const GroupSpec& spec, const GroupPoint& x) {
    if (int(x.size()) != spec.dim()) throw std::invalid_argument("dimension mismatch");
}

GroupPoint lie_bracket(const GroupSpec& spec, const GroupPoint& x, const GroupPoint& y) {
    check_dim(spec, x);
    check_dim(spec, y);
    GroupPoint z = identity(spec);
    for (const auto& b : spec.brackets()) {
        if (x[b.i].is_zero() && x[b.j].is_zero()) continue;
        ExactScalar t = x[b.i] * y[b.j] - x[b.j] * y[b.i];
        if (!t.is_zero()) z[b.k] += t * ExactScalar(b.c);
    }
    return z;
}

GroupPoint bch_multiply(const GroupSpec& spec, const GroupPoint& x, const GroupPoint& y) {
    check_dim(spec, x);
    check_dim(spec, y);
    GroupPoint z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    if (spec.is_abelian()) return z;
    const ExactScalar half(Rational(1, 2));
    for (const auto& b : spec.brackets()) {
        ExactScalar t = x[b.i] * y[b.j] - x[b.j] * y[b.i];
        if (!t.is_zero()) z[b.k] += t * ExactScalar(Rational(b.c / 2));
    }
    return z;
}

GroupPoint inverse(const GroupPoint& x) {
    GroupPoint r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = -x[i];
    return r;
}

GroupPoint dilate(const GroupSpec& spec, const Rational& r, const GroupPoint& x) {
    check_dim(spec, x);
    if (sgn(r) <= 0) throw std::invalid_argument("dilation factor must be positive");
    GroupPoint z(x.size());
    for (int i = 0; i < spec.dim(); ++i) z[i] = x[i] * ExactScalar(rational_power(r, spec.weights()[i]));
    return z;
}

double quasi_norm(const GroupSpec& spec, const GroupPoint& x) {
    check_dim(spec, x);
    if (spec.norm() == NormKind::Koranyi) {
        if (!spec.koranyi_layout()) throw std::invalid_argument("koranyi norm unsupported for this group");
        double a = x[0].to_double(), b = x[1].to_double(), c = x[2].to_double();
        double s = a * a + b * b;
        return std::pow(s * s + c * c, 0.25);
    }
    double m = 0;
    for (int i = 0; i < spec.dim(); ++i)
        m = std::max(m, std::pow(std::fabs(x[i].to_double()), 1.0 / spec.weights()[i].get_d()));
    return m;
}

namespace {

// |y| < r^nu with nu = p/q, compared as |y|^q < r^p
bool coord_less(const ExactScalar& y, const Rational& r, const Rational& nu) {
    unsigned long q = nu.get_den().get_ui();
    unsigned long p = nu.get_num().get_ui();
    ExactScalar lhs = pow(y.abs(), unsigned(q));
    Rational rp = 1;
    for (unsigned long i = 0; i < p; ++i) rp *= r;
    return lhs < ExactScalar(rp);
}

}  // namespace

bool norm_less(const GroupSpec& spec, const GroupPoint& y, const Rational& r) {
    check_dim(spec, y);
    if (sgn(r) <= 0) return false;
    if (spec.norm() == NormKind::Koranyi) {
        if (!spec.koranyi_layout()) throw std::invalid_argument("koranyi norm unsupported for this group");
        ExactScalar s = y[0] * y[0] + y[1] * y[1];
        Rational r4 = r * r * r * r;
        return s * s + y[2] * y[2] < ExactScalar(r4);
    }
    for (int i = 0; i < spec.dim(); ++i)
        if (!coord_less(y[i], r, spec.weights()[i])) return false;
    return true;
}

bool ball_contains(const GroupSpec& spec, const Rational& r, const GroupPoint& center, const GroupPoint& x) {
    return norm_less(spec, bch_multiply(spec, x, inverse(center)), r);
}

Rational ball_volume(const GroupSpec& spec, const Rational& r) {
    if (spec.norm() != NormKind::WeightedMax) throw std::invalid_argument("ball volume needs the weighted-max norm");
    if (sgn(r) <= 0) return 0;
    Rational v = rational_power(r, spec.homdim());
    for (int i = 0; i < spec.dim(); ++i) v *= 2;
    return v;
}

GroupPoint matrix_to_exp(const GroupPoint& m) {
    if (m.size() != 3) throw std::invalid_argument("matrix coordinates need dimension 3");
    return {m[0], m[1], m[2] - m[0] * m[1] * ExactScalar(Rational(1, 2))};
}

GroupPoint exp_to_matrix(const GroupPoint& x) {
    if (x.size() != 3) throw std::invalid_argument("matrix coordinates need dimension 3");
    return {x[0], x[1], x[2] + x[0] * x[1] * ExactScalar(Rational(1, 2))};
}

// ---------------------------------------------------------------- hyperplanes

ExactScalar dot(const std::vector<ExactScalar>& a, const std::vector<ExactScalar>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    ExactScalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

HyperplaneH::HyperplaneH(std::vector<ExactScalar> n, ExactScalar b) : normal(std::move(n)), offset(std::move(b)) {
    bool nz = false;
    for (const auto& v : normal) nz = nz || !v.is_zero();
    if (!nz) throw std::invalid_argument("hyperplane normal is zero");
}

HyperplaneH HyperplaneH::canonical() const {
    for (std::size_t i = 0; i < normal.size(); ++i) {
        if (normal[i].is_zero()) continue;
        if (normal[i] == ExactScalar(1)) return *this;
        ExactScalar inv = normal[i].inverse();
        HyperplaneH h;
        h.normal.resize(normal.size());
        for (std::size_t j = 0; j < normal.size(); ++j) h.normal[j] = j == i ? ExactScalar(1) : normal[j] * inv;
        h.offset = offset * inv;
        return h;
    }
    throw std::invalid_argument("hyperplane normal is zero");
}

bool HyperplaneH::contains(const GroupPoint& p) const { return dot(normal, p) == offset; }

int HyperplaneH::repr_compare(const HyperplaneH& a, const HyperplaneH& b) {
    if (a.normal.size() != b.normal.size()) return a.normal.size() < b.normal.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.normal.size(); ++i)
        if (int c = ExactScalar::repr_compare(a.normal[i], b.normal[i])) return c;
    return ExactScalar::repr_compare(a.offset, b.offset);
}

HalfSpace HalfSpace::canonical() const {
    for (const auto& v : normal) {
        if (v.is_zero()) continue;
        ExactScalar inv = v.abs().inverse();
        HalfSpace h;
        for (const auto& w : normal) h.normal.push_back(w * inv);
        h.offset = offset * inv;
        return h;
    }
    throw std::invalid_argument("half-space normal is zero");
}

ExactScalar HalfSpace::slack(const GroupPoint& p) const { return offset - dot(normal, p); }

namespace {

// coefficients of q -> <n, x^-1 * q> and the constant term moved to the right-hand side
void translate_linear_form(const GroupSpec& spec, const GroupPoint& x, const std::vector<ExactScalar>& n,
                           const ExactScalar& b, std::vector<ExactScalar>& n_out, ExactScalar& b_out) {
    if (!spec.is_two_step()) throw ValidationError("hyperplane action needs a 2-step (non-crooked) group");
    check_dim(spec, x);
    if (n.size() != x.size()) throw std::invalid_argument("dimension mismatch");
    n_out = n;
    for (const auto& br : spec.brackets()) {
        if (n[br.k].is_zero()) continue;
        // -1/2 n_k c x_i q_j + 1/2 n_k c x_j q_i
        ExactScalar w = n[br.k] * ExactScalar(Rational(br.c / 2));
        if (!x[br.i].is_zero()) n_out[br.j] -= w * x[br.i];
        if (!x[br.j].is_zero()) n_out[br.i] += w * x[br.j];
    }
    b_out = b + dot(n, x);
}

}  // namespace

HyperplaneH act_on_hyperplane(const GroupSpec& spec, const GroupPoint& x, const HyperplaneH& P) {
    std::vector<ExactScalar> n;
    ExactScalar b;
    translate_linear_form(spec, x, P.normal, P.offset, n, b);
    return HyperplaneH(std::move(n), std::move(b)).canonical();
}

HalfSpace act_on_halfspace(const GroupSpec& spec, const GroupPoint& x, const HalfSpace& P) {
    HalfSpace h;
    translate_linear_form(spec, x, P.normal, P.offset, h.normal, h.offset);
    return h;
}

void act_on_parametrization(const GroupSpec& spec, const GroupPoint& x, GroupPoint& base,
                            std::vector<GroupPoint>& dirs) {
    if (!spec.is_two_step()) throw ValidationError("hyperplane action needs a 2-step (non-crooked) group");
    base = bch_multiply(spec, x, base);
    const ExactScalar half(Rational(1, 2));
    for (auto& d : dirs) {
        GroupPoint br = lie_bracket(spec, x, d);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += half * br[i];
    }
}

bool is_locally_two_step(const GroupSpec& spec) { return spec.is_two_step(); }

double angle_between(const HyperplaneH& P, const HyperplaneH& Q) {
    if (P.normal.size() != Q.normal.size()) throw std::invalid_argument("dimension mismatch");
    double np = 0, nq = 0, d = 0;
    for (std::size_t i = 0; i < P.normal.size(); ++i) {
        double a = P.normal[i].to_double(), b = Q.normal[i].to_double();
        np += a * a;
        nq += b * b;
        d += a * b;
    }
    if (np == 0 || nq == 0) throw std::invalid_argument("zero normal");
    double c = std::min(1.0, std::fabs(d) / std::sqrt(np * nq));
    return std::acos(c);
}

namespace {

double norm_of_doubles(const GroupSpec& spec, const std::vector<double>& y) {
    if (spec.norm() == NormKind::Koranyi) {
        double s = y[0] * y[0] + y[1] * y[1];
        return std::pow(s * s + y[2] * y[2], 0.25);
    }
    double m = 0;
    for (int i = 0; i < spec.dim(); ++i)
        m = std::max(m, std::pow(std::fabs(y[i]), 1.0 / spec.weights()[i].get_d()));
    return m;
}

double conj_norm(const GroupSpec& spec, const std::vector<double>& x, const std::vector<double>& u) {
    // x u x^-1 = u + [x, u] in a 2-step group
    std::vector<double> y = u;
    for (const auto& b : spec.brackets()) y[b.k] += b.c.get_d() * (x[b.i] * u[b.j] - x[b.j] * u[b.i]);
    return norm_of_doubles(spec, y);
}

}  // namespace

double max_conjugate_norm(const GroupSpec& spec, const GroupPoint& x, const std::vector<GroupPoint>& us) {
    if (!spec.is_two_step()) throw ValidationError("conjugation formula needs a 2-step group");
    std::vector<double> xd(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xd[i] = x[i].to_double();
    double m = 0;
    for (const auto& u : us) {
        std::vector<double> ud(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) ud[i] = u[i].to_double();
        m = std::max(m, conj_norm(spec, xd, ud));
    }
    return m;
}

double conjugation_distortion(const GroupSpec& spec, const GroupPoint& x, double eps, int samples,
                              std::uint64_t seed) {
    check_dim(spec, x);
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!spec.is_two_step()) throw ValidationError("conjugation formula needs a 2-step group");
    int n = spec.dim();
    std::vector<double> xd(n), side(n);
    for (int i = 0; i < n; ++i) {
        xd[i] = x[i].to_double();
        side[i] = std::pow(eps, spec.weights()[i].get_d());
    }
    double m = 0;
    std::vector<double> u(n);
    bool koranyi = spec.norm() == NormKind::Koranyi;
    auto to_sphere = [&](std::vector<double>& v) {
        double nv = norm_of_doubles(spec, v);
        if (nv == 0) return;
        double s = eps / nv;
        for (int i = 0; i < n; ++i) v[i] *= std::pow(s, spec.weights()[i].get_d());
    };
    if (n <= 16) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (int i = 0; i < n; ++i) u[i] = (mask >> i & 1) ? side[i] : -side[i];
            if (koranyi) to_sphere(u);
            m = std::max(m, conj_norm(spec, xd, u));
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) u[i] = U(rng) * side[i];
        if (koranyi && norm_of_doubles(spec, u) > eps) to_sphere(u);
        m = std::max(m, conj_norm(spec, xd, u));
    }
    return m;
}

std::string point_str(const GroupPoint& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i].str();
    os << ")";
    return os.str();
}

int point_repr_compare(const GroupPoint& a, const GroupPoint& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = ExactScalar::repr_compare(a[i], b[i])) return c;
    return 0;
}

std::size_t PointHash::operator()(const GroupPoint& p) const {
    std::size_t h = 0;
    for (const auto& v : p) h = h * 1000003u ^ v.hash();
    return h;
}

}  // namespace nilcps
