#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nilcps {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

class FieldMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Real number field Q(alpha) of degree 1, 2 or 3 with a fixed real embedding.
// degree 2: alpha = sqrt(D), D squarefree > 1.
// degree 3: alpha is the root in [lo, hi] of x^3 + m2 x^2 + m1 x + m0; the
// field must be Galois (cyclic) with sigma(alpha) = s0 + s1 alpha + s2 alpha^2.
// Fields are interned; pointer equality is field equality.
class Field {
public:
    static const Field* rationals();
    static const Field* quadratic(long D);
    static const Field* cubic(const std::array<long, 3>& m, const std::array<Rational, 3>& sigma,
                              const Rational& lo, const Rational& hi);

    int degree() const { return degree_; }
    long D() const { return D_; }
    const std::array<long, 3>& minpoly() const { return m_; }
    const std::array<Rational, 3>& sigma() const { return sigma_; }
    const Rational& root_lo() const { return lo_; }
    const Rational& root_hi() const { return hi_; }

    // conjugation sigma^k as a matrix acting on power-basis coefficients
    const std::array<std::array<Rational, 3>, 3>& conj_matrix(int k) const { return conj_[k]; }
    // double approximation of sigma^k(alpha)
    double embedding(int k) const { return emb_[k]; }
    std::string describe() const;

private:
    Field() = default;
    int degree_ = 1;
    long D_ = 0;
    std::array<long, 3> m_{};
    std::array<Rational, 3> sigma_{};
    Rational lo_, hi_;
    std::array<std::array<std::array<Rational, 3>, 3>, 3> conj_{};
    std::array<double, 3> emb_{};
    friend struct FieldBuilder;
};

// Double with a rigorous absolute error bound.
struct Approx {
    double v = 0.0;
    double e = 0.0;
    Approx() = default;
    Approx(double value, double err) : v(value), e(err) {}
    int certain_sign() const;  // 0 when undecided
};
Approx operator+(const Approx& a, const Approx& b);
Approx operator-(const Approx& a, const Approx& b);
Approx operator*(const Approx& a, const Approx& b);
Approx operator-(const Approx& a);
// b must be certainly nonzero
Approx operator/(const Approx& a, const Approx& b);
Approx approx_of(const Rational& q);
Approx approx_of(long q);

// Element c0 + c1 alpha + c2 alpha^2 of a Field. Elements of the rational
// field mix freely with any field; two distinct non-rational fields throw.
class ExactScalar {
public:
    ExactScalar() : f_(Field::rationals()) {}
    ExactScalar(long v) : f_(Field::rationals()) { c_[0] = v; }
    ExactScalar(const Rational& q) : f_(Field::rationals()) { c_[0] = q; }
    ExactScalar(const Field* f, const Rational& c0, const Rational& c1 = 0, const Rational& c2 = 0);
    // a + b sqrt(D)
    static ExactScalar quadratic(long D, const Rational& a, const Rational& b);

    const Field* field() const { return f_; }
    const Rational& coeff(int i) const { return c_[i]; }
    // a and b of a + b sqrt(D)
    const Rational& a() const { return c_[0]; }
    const Rational& b() const { return c_[1]; }
    long D() const { return f_->D(); }

    bool is_zero() const { return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0; }
    bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0; }
    int sign() const;
    ExactScalar abs() const { return sign() < 0 ? -*this : *this; }
    ExactScalar conj(int k = 1) const;
    ExactScalar star() const { return conj(1); }
    ExactScalar inverse() const;
    double to_double() const;
    Approx approx() const;
    std::string str() const;

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);
    ExactScalar operator-() const;

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
    friend bool operator<(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign() < 0; }
    friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign() >= 0; }

    // total order on representations, for canonical sorting and map keys
    static int repr_compare(const ExactScalar& a, const ExactScalar& b);
    std::size_t hash() const;

private:
    const Field* f_;
    std::array<Rational, 3> c_{};
    void unify(const ExactScalar& o);
};

int compare(const ExactScalar& a, const ExactScalar& b);
ExactScalar pow(const ExactScalar& x, unsigned e);
// exact r^(p/q) for rational r > 0 when it is rational; throws otherwise
Rational rational_power(const Rational& r, const Rational& exponent);

}  // namespace nilcps
