#include "nilcps/scalar.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

namespace nilcps {

namespace {

constexpr double kUlp = 0x1p-52;

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

int sgn_q(const Rational& q) { return sgn(q); }

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string n = s.substr(0, slash), d = s.substr(slash + 1);
        if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("bad rational '" + raw + "'");
        Rational q(mpz_class(strip_plus(n)), mpz_class(strip_plus(d)));
        if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        std::string ipd = (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ? ip.substr(1) : ip;
        if (ipd.empty()) ipd = "0";
        if (fp.empty() || !valid_int(ipd) || !valid_int(fp) || fp[0] == '-' || fp[0] == '+')
            throw std::invalid_argument("bad decimal '" + raw + "'");
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rational q(mpz_class(ipd) * den + mpz_class(fp), den);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }
    if (!valid_int(s)) throw std::invalid_argument("bad rational '" + raw + "'");
    return Rational(mpz_class(strip_plus(s)));
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Field

struct FieldBuilder {
    static std::vector<std::unique_ptr<Field>>& registry() {
        static std::vector<std::unique_ptr<Field>> r;
        return r;
    }

    static Rational eval_minpoly(const Field& f, const Rational& x) {
        return ((x + f.m_[2]) * x + f.m_[1]) * x + f.m_[0];
    }

    static void fill_conj(Field& f) {
        // conj_[k][i][j] = coefficient i of sigma^k(alpha^j)
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) f.conj_[k][i][j] = 0;
        for (int i = 0; i < f.degree_; ++i) f.conj_[0][i][i] = 1;
        if (f.degree_ == 2) {
            f.conj_[1][0][0] = 1;
            f.conj_[1][1][1] = -1;
        } else if (f.degree_ == 3) {
            for (int k = 1; k < 3; ++k) {
                // sigma^k(alpha) = sigma applied to sigma^{k-1}(alpha)
                ExactScalar prev(&f, f.conj_[k - 1][0][1], f.conj_[k - 1][1][1], f.conj_[k - 1][2][1]);
                ExactScalar s(&f, f.sigma_[0], f.sigma_[1], f.sigma_[2]);
                ExactScalar img = ExactScalar(&f, prev.coeff(0)) + ExactScalar(&f, prev.coeff(1)) * s +
                                  ExactScalar(&f, prev.coeff(2)) * s * s;
                ExactScalar p = 1;
                for (int j = 0; j < 3; ++j) {
                    for (int i = 0; i < 3; ++i) f.conj_[k][i][j] = p.coeff(i);
                    p = p * img;
                }
            }
        }
    }
};

const Field* Field::rationals() {
    static const Field* q = [] {
        std::lock_guard<std::mutex> lk(registry_mutex());
        auto f = std::unique_ptr<Field>(new Field());
        f->degree_ = 1;
        f->emb_ = {1.0, 1.0, 1.0};
        FieldBuilder::fill_conj(*f);
        FieldBuilder::registry().push_back(std::move(f));
        return FieldBuilder::registry().back().get();
    }();
    return q;
}

const Field* Field::quadratic(long D) {
    if (D == 0 || D == 1) return rationals();
    if (D < 0) throw std::invalid_argument("quadratic field needs D > 0");
    for (long p = 2; p * p <= D; ++p)
        if (D % (p * p) == 0) throw std::invalid_argument("D must be squarefree");
    rationals();
    std::lock_guard<std::mutex> lk(registry_mutex());
    for (auto& f : FieldBuilder::registry())
        if (f->degree_ == 2 && f->D_ == D) return f.get();
    auto f = std::unique_ptr<Field>(new Field());
    f->degree_ = 2;
    f->D_ = D;
    f->emb_ = {std::sqrt(double(D)), -std::sqrt(double(D)), 0.0};
    FieldBuilder::fill_conj(*f);
    FieldBuilder::registry().push_back(std::move(f));
    return FieldBuilder::registry().back().get();
}

const Field* Field::cubic(const std::array<long, 3>& m, const std::array<Rational, 3>& sigma,
                          const Rational& lo, const Rational& hi) {
    rationals();
    {
        std::lock_guard<std::mutex> lk(registry_mutex());
        for (auto& f : FieldBuilder::registry())
            if (f->degree_ == 3 && f->m_ == m && f->sigma_ == sigma && f->lo_ <= hi && lo <= f->hi_)
                return f.get();
    }
    if (m[0] == 0) throw std::invalid_argument("cubic minimal polynomial is reducible (root 0)");
    for (long d = 1; d <= std::labs(m[0]); ++d) {
        if (m[0] % d) continue;
        for (long s : {d, -d})
            if (((s + m[2]) * s + m[1]) * s + m[0] == 0)
                throw std::invalid_argument("cubic minimal polynomial has a rational root");
    }
    auto f = std::unique_ptr<Field>(new Field());
    f->degree_ = 3;
    f->m_ = m;
    f->sigma_ = sigma;
    if (!(lo < hi)) throw std::invalid_argument("cubic root interval empty");
    Rational plo = FieldBuilder::eval_minpoly(*f, lo), phi = FieldBuilder::eval_minpoly(*f, hi);
    if (sgn(plo) * sgn(phi) >= 0) throw std::invalid_argument("cubic root interval has no sign change");
    // derivative 3x^2 + 2 m2 x + m1 must not vanish on [lo, hi]
    auto dp = [&](const Rational& x) { return Rational(3 * x * x + 2 * m[2] * x + m[1]); };
    Rational vertex(-m[2], 3);
    int s0 = sgn(dp(lo)), s1 = sgn(dp(hi));
    bool vin = lo <= vertex && vertex <= hi;
    if (s0 == 0 || s0 != s1 || (vin && sgn(dp(vertex)) != s0))
        throw std::invalid_argument("cubic root interval does not isolate a simple root");
    Rational a = lo, b = hi;
    const Rational tiny(mpz_class(1), mpz_class(1) << 160);
    while (b - a > tiny) {
        Rational mid = (a + b) / 2;
        Rational pm = FieldBuilder::eval_minpoly(*f, mid);
        if (sgn(pm) == 0) throw std::invalid_argument("cubic minimal polynomial has a rational root");
        if (sgn(pm) == sgn(plo)) a = mid; else b = mid;
    }
    f->lo_ = a;
    f->hi_ = b;
    FieldBuilder::fill_conj(*f);
    // sigma(alpha) must be a root of the minimal polynomial different from alpha
    ExactScalar s(f.get(), sigma[0], sigma[1], sigma[2]);
    ExactScalar val = s * s * s + ExactScalar(m[2]) * s * s + ExactScalar(m[1]) * s + ExactScalar(m[0]);
    if (!val.is_zero()) throw std::invalid_argument("sigma(alpha) is not a root of the minimal polynomial");
    if (sgn(sigma[0]) == 0 && sigma[1] == 1 && sgn(sigma[2]) == 0)
        throw std::invalid_argument("sigma must not be the identity");
    double al = Rational((a + b) / 2).get_d();
    f->emb_[0] = al;
    for (int k = 1; k < 3; ++k) {
        double v = 0, p = 1;
        for (int j = 0; j < 3; ++j) {
            v += f->conj_[k][j][1].get_d() * p;
            p *= al;
        }
        f->emb_[k] = v;
    }
    std::lock_guard<std::mutex> lk(registry_mutex());
    FieldBuilder::registry().push_back(std::move(f));
    return FieldBuilder::registry().back().get();
}

std::string Field::describe() const {
    std::ostringstream os;
    if (degree_ == 1) os << "Q";
    else if (degree_ == 2) os << "Q(sqrt(" << D_ << "))";
    else os << "Q(t), t^3+" << m_[2] << "t^2+" << m_[1] << "t+" << m_[0];
    return os.str();
}

// ---------------------------------------------------------------- Approx

int Approx::certain_sign() const {
    if (v > e) return 1;
    if (v < -e) return -1;
    return 0;
}

Approx operator+(const Approx& a, const Approx& b) {
    double v = a.v + b.v;
    return {v, (a.e + b.e + std::fabs(v) * kUlp) * (1 + 4 * kUlp)};
}
Approx operator-(const Approx& a, const Approx& b) {
    double v = a.v - b.v;
    return {v, (a.e + b.e + std::fabs(v) * kUlp) * (1 + 4 * kUlp)};
}
Approx operator*(const Approx& a, const Approx& b) {
    double v = a.v * b.v;
    return {v, (std::fabs(a.v) * b.e + std::fabs(b.v) * a.e + a.e * b.e + std::fabs(v) * kUlp) *
                   (1 + 8 * kUlp) + 1e-300};
}
Approx operator-(const Approx& a) { return {-a.v, a.e}; }
Approx operator/(const Approx& a, const Approx& b) {
    double lo = std::fabs(b.v) - b.e;
    if (!(lo > 0)) throw std::domain_error("Approx division by an uncertain zero");
    double v = a.v / b.v;
    return {v, ((a.e + std::fabs(v) * b.e) / lo + std::fabs(v) * kUlp) * (1 + 8 * kUlp) + 1e-300};
}
Approx approx_of(const Rational& q) {
    double d = q.get_d();
    return {d, std::fabs(d) * 2 * kUlp + 1e-300};
}
Approx approx_of(long q) {
    double d = double(q);
    return {d, std::fabs(d) * kUlp};
}

// ---------------------------------------------------------------- ExactScalar

ExactScalar::ExactScalar(const Field* f, const Rational& c0, const Rational& c1, const Rational& c2) : f_(f) {
    c_[0] = c0;
    if (f->degree() >= 2) c_[1] = c1;
    else if (sgn(c1) != 0) throw std::invalid_argument("coefficient beyond field degree");
    if (f->degree() >= 3) c_[2] = c2;
    else if (sgn(c2) != 0) throw std::invalid_argument("coefficient beyond field degree");
}

ExactScalar ExactScalar::quadratic(long D, const Rational& a, const Rational& b) {
    return ExactScalar(Field::quadratic(D), a, b);
}

void ExactScalar::unify(const ExactScalar& o) {
    if (f_ == o.f_) return;
    if (o.f_->degree() == 1) return;
    if (f_->degree() == 1) {
        f_ = o.f_;
        return;
    }
    throw FieldMismatch("scalar field mismatch: " + f_->describe() + " vs " + o.f_->describe());
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    unify(o);
    c_[0] += o.c_[0];
    if (sgn(o.c_[1])) c_[1] += o.c_[1];
    if (sgn(o.c_[2])) c_[2] += o.c_[2];
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    unify(o);
    c_[0] -= o.c_[0];
    if (sgn(o.c_[1])) c_[1] -= o.c_[1];
    if (sgn(o.c_[2])) c_[2] -= o.c_[2];
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    unify(o);
    int deg = f_->degree();
    if (o.is_rational()) {
        for (int i = 0; i < deg; ++i)
            if (sgn(c_[i])) c_[i] *= o.c_[0];
        return *this;
    }
    if (is_rational()) {
        Rational k = c_[0];
        *this = o;
        for (int i = 0; i < deg; ++i)
            if (sgn(c_[i])) c_[i] *= k;
        return *this;
    }
    if (deg == 2) {
        Rational a = c_[0] * o.c_[0] + c_[1] * o.c_[1] * f_->D();
        Rational b = c_[0] * o.c_[1] + c_[1] * o.c_[0];
        c_[0] = std::move(a);
        c_[1] = std::move(b);
        return *this;
    }
    std::array<Rational, 5> p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (sgn(c_[i]) && sgn(o.c_[j])) p[i + j] += c_[i] * o.c_[j];
    const auto& m = f_->minpoly();
    // alpha^4 = alpha * alpha^3, alpha^3 = -m0 - m1 alpha - m2 alpha^2
    if (sgn(p[4])) {
        p[1] -= p[4] * m[0];
        p[2] -= p[4] * m[1];
        p[3] -= p[4] * m[2];
    }
    if (sgn(p[3])) {
        p[0] -= p[3] * m[0];
        p[1] -= p[3] * m[1];
        p[2] -= p[3] * m[2];
    }
    c_[0] = p[0];
    c_[1] = p[1];
    c_[2] = p[2];
    return *this;
}

ExactScalar ExactScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) {
        ExactScalar r(f_, Rational(1) / c_[0]);
        return r;
    }
    if (f_->degree() == 2) {
        Rational norm = c_[0] * c_[0] - c_[1] * c_[1] * f_->D();
        return ExactScalar(f_, c_[0] / norm, -c_[1] / norm);
    }
    ExactScalar s1 = conj(1), s2 = conj(2);
    ExactScalar num = s1 * s2;
    ExactScalar norm = *this * num;
    return num * ExactScalar(Rational(1) / norm.c_[0]);
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (o.is_rational()) {
        if (sgn(o.c_[0]) == 0) throw std::domain_error("division by zero");
        unify(o);
        for (int i = 0; i < f_->degree(); ++i)
            if (sgn(c_[i])) c_[i] /= o.c_[0];
        return *this;
    }
    return *this *= o.inverse();
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.f_ != b.f_ && a.f_->degree() > 1 && b.f_->degree() > 1)
        throw FieldMismatch("scalar field mismatch in comparison");
    return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2];
}

int ExactScalar::sign() const {
    int deg = f_->degree();
    if (deg == 1 || is_rational()) return sgn_q(c_[0]);
    if (deg == 2) {
        int sa = sgn_q(c_[0]), sb = sgn_q(c_[1]);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 with b^2 D
        Rational a2 = c_[0] * c_[0];
        Rational b2d = c_[1] * c_[1] * f_->D();
        return a2 > b2d ? sa : sb;
    }
    // cubic: rational interval evaluation on the isolating interval, refined on demand
    Rational lo = f_->root_lo(), hi = f_->root_hi();
    auto value = [&](const Rational& x) { return Rational(c_[0] + (c_[1] + c_[2] * x) * x); };
    auto minpoly = [&](const Rational& x) {
        const auto& m = f_->minpoly();
        return Rational(((x + m[2]) * x + m[1]) * x + m[0]);
    };
    int slo = sgn(minpoly(lo));
    for (int iter = 0; iter < 100000; ++iter) {
        Rational vl = value(lo), vh = value(hi);
        Rational mn = vl < vh ? vl : vh, mx = vl < vh ? vh : vl;
        if (sgn(c_[2]) != 0) {
            Rational xv = -c_[1] / (2 * c_[2]);
            if (lo < xv && xv < hi) {
                Rational vv = value(xv);
                if (vv < mn) mn = vv;
                if (vv > mx) mx = vv;
            }
        }
        if (sgn(mn) > 0) return 1;
        if (sgn(mx) < 0) return -1;
        Rational mid = (lo + hi) / 2;
        if (sgn(minpoly(mid)) == slo) lo = mid; else hi = mid;
    }
    throw std::runtime_error("cubic sign refinement did not terminate");
}

int compare(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign(); }

ExactScalar ExactScalar::conj(int k) const {
    int deg = f_->degree();
    if (deg == 1) return *this;
    k %= deg;
    if (k < 0) k += deg;
    if (k == 0) return *this;
    if (deg == 2) return ExactScalar(f_, c_[0], -c_[1]);
    const auto& M = f_->conj_matrix(k);
    ExactScalar r(f_, 0);
    for (int i = 0; i < 3; ++i) {
        Rational s = 0;
        for (int j = 0; j < 3; ++j)
            if (sgn(c_[j]) && sgn(M[i][j])) s += M[i][j] * c_[j];
        r.c_[i] = s;
    }
    return r;
}

double ExactScalar::to_double() const { return approx().v; }

Approx ExactScalar::approx() const {
    Approx r = approx_of(c_[0]);
    int deg = f_->degree();
    if (deg == 1) return r;
    double al = f_->embedding(0);
    Approx a(al, std::fabs(al) * 4 * kUlp);
    if (deg == 3) a.e += mpq_class(f_->root_hi() - f_->root_lo()).get_d();
    Approx p = a;
    for (int j = 1; j < deg; ++j) {
        if (sgn(c_[j])) r = r + approx_of(c_[j]) * p;
        p = p * a;
    }
    return r;
}

std::string ExactScalar::str() const {
    std::ostringstream os;
    int deg = f_->degree();
    os << c_[0].get_str();
    if (deg >= 2 && sgn(c_[1])) {
        os << (sgn(c_[1]) > 0 ? "+" : "") << c_[1].get_str();
        if (deg == 2) os << "*sqrt(" << f_->D() << ")";
        else os << "*t";
    }
    if (deg >= 3 && sgn(c_[2])) os << (sgn(c_[2]) > 0 ? "+" : "") << c_[2].get_str() << "*t^2";
    return os.str();
}

int ExactScalar::repr_compare(const ExactScalar& a, const ExactScalar& b) {
    for (int i = 0; i < 3; ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::size_t ExactScalar::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& c : c_) {
        std::size_t hn = mpz_size(c.get_num_mpz_t()) ? mpz_getlimbn(c.get_num_mpz_t(), 0) : 0;
        std::size_t hd = mpz_getlimbn(c.get_den_mpz_t(), 0);
        h ^= hn + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= std::size_t(sgn(c)) * 31 + hd + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

ExactScalar pow(const ExactScalar& x, unsigned e) {
    ExactScalar r(x.field(), 1), b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rational rational_power(const Rational& r, const Rational& exponent) {
    if (sgn(r) <= 0) throw std::domain_error("rational_power needs a positive base");
    if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p())
        throw std::domain_error("exponent too large");
    unsigned long q = exponent.get_den().get_ui();
    long p = exponent.get_num().get_si();
    mpz_class n, d;
    int en = mpz_root(n.get_mpz_t(), r.get_num_mpz_t(), q);
    int ed = mpz_root(d.get_mpz_t(), r.get_den_mpz_t(), q);
    if (!en || !ed) throw std::domain_error("r^(p/q) is irrational for r = " + r.get_str());
    Rational base(n, d), out = 1;
    unsigned long ap = static_cast<unsigned long>(p < 0 ? -p : p);
    for (unsigned long i = 0; i < ap; ++i) out *= base;
    if (p < 0) out = 1 / out;
    return out;
}

}  // namespace nilcps
