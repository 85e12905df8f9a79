#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace opmoment {

/// Arbitrary-precision rational scalar (canonical form maintained by GMP).
using Rational = mpq_class;

inline Rational rationalFromString(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational literal: '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string rationalToString(const Rational& q) { return q.get_str(); }

inline Rational rationalPow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

/// Complex number over the rationals, i.e. an element of Q(i).
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}

  bool isZero() const { return re == 0 && im == 0; }

  GaussianRational operator-() const { return {Rational(-re), Rational(-im)}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw std::invalid_argument("division by zero GaussianRational");
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conjugate(const GaussianRational& z) { return {z.re, Rational(-z.im)}; }
inline std::complex<double> conjugate(const std::complex<double>& z) { return std::conj(z); }

/// Exact backend: scalars are Gaussian rationals; every identity holds exactly.
struct ExactField {
  using Real = Rational;
  using Complex = GaussianRational;
  static constexpr bool kExact = true;

  static Complex makeComplex(Real re, Real im) { return {std::move(re), std::move(im)}; }
  static Real realPart(const Complex& z) { return z.re; }
  static Real imagPart(const Complex& z) { return z.im; }
  static bool isZero(const Complex& z) { return z.isZero(); }
  static bool isZeroReal(const Real& r) { return r == 0; }
  static Real fromLong(long v) { return Real(v); }
  static Real fromRatio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  static Real pow(const Real& base, unsigned long e) { return rationalPow(base, e); }
  static double asDouble(const Real& r) { return r.get_d(); }
  static double asDoubleComplexAbs(const Complex& z) {
    return std::max(std::fabs(z.re.get_d()), std::fabs(z.im.get_d()));
  }
};

/// Floating backend: machine doubles; identities hold to tolerance only.
struct ApproxField {
  using Real = double;
  using Complex = std::complex<double>;
  static constexpr bool kExact = false;
  static constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

  static Complex makeComplex(Real re, Real im) { return {re, im}; }
  static Real realPart(const Complex& z) { return z.real(); }
  static Real imagPart(const Complex& z) { return z.imag(); }
  static bool isZero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  static bool isZeroReal(const Real& r) { return r == 0.0; }
  static Real fromLong(long v) { return static_cast<double>(v); }
  static Real fromRatio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
  static Real pow(const Real& base, unsigned long e) {
    double out = 1.0;
    double b = base;
    unsigned long k = e;
    while (k > 0) {
      if (k & 1UL) out *= b;
      b *= b;
      k >>= 1UL;
    }
    return out;
  }
  static double asDouble(const Real& r) { return r; }
  static double asDoubleComplexAbs(const Complex& z) {
    return std::max(std::fabs(z.real()), std::fabs(z.imag()));
  }
};

template <class F>
concept ScalarField = requires {
  typename F::Real;
  typename F::Complex;
  { F::kExact } -> std::convertible_to<bool>;
};

inline double toApproxReal(const Rational& r) { return r.get_d(); }
inline double toApproxReal(double r) { return r; }
inline std::complex<double> toApproxComplex(const GaussianRational& z) {
  return {z.re.get_d(), z.im.get_d()};
}
inline std::complex<double> toApproxComplex(const std::complex<double>& z) { return z; }

inline Rational exactRealFromDouble(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot lift non-finite double to Rational");
  return Rational(v);
}

}  // namespace opmoment
