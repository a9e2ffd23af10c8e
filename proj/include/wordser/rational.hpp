#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>

#include "wordser/errors.hpp"

namespace wordser {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using complexd = std::complex<double>;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Complex number with exact rational real and imaginary parts. Equality is
// exact; this is the scalar of the default arithmetic mode.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int v) : re(v) {}  // NOLINT: implicit by design, mirrors complex<double>
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational unit_imag() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw ConfigError("division by zero GaussianRational");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  complexd to_complex() const { return {to_double(re), to_double(im)}; }

  std::string str() const {
    if (im == 0) return re.str();
    std::string s = (re == 0) ? "" : re.str();
    if (im > 0 && !s.empty()) s += "+";
    s += im.str() + "*i";
    return s;
  }
};

// Integer power with negative exponents (needs a.is_zero() == false for m < 0).
inline GaussianRational pow_int(const GaussianRational& a, long m) {
  GaussianRational base = a;
  if (m < 0) {
    base = GaussianRational(1) / a;
    m = -m;
  }
  GaussianRational acc(1);
  while (m > 0) {
    if (m & 1) acc *= base;
    base *= base;
    m >>= 1;
  }
  return acc;
}

// ----- scalar traits: uniform view of the two arithmetic modes -------------

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational from_int(long n) { return GaussianRational(Rational(n)); }
  static GaussianRational from_complex(const complexd&) {
    throw ModeError("cannot convert float value into exact rational mode");
  }
  static complexd to_complex(const GaussianRational& v) { return v.to_complex(); }
  static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
  static bool eq(const GaussianRational& a, const GaussianRational& b, double /*tol*/ = 0) {
    return a == b;
  }
  // Arbitrary total order used only for canonical term ordering.
  static bool less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
  static std::string str(const GaussianRational& v) { return v.str(); }
};

template <>
struct ScalarOps<complexd> {
  static constexpr bool exact = false;
  static complexd zero() { return {0.0, 0.0}; }
  static complexd one() { return {1.0, 0.0}; }
  static complexd from_int(long n) { return {static_cast<double>(n), 0.0}; }
  static complexd from_complex(const complexd& z) { return z; }
  static complexd to_complex(const complexd& v) { return v; }
  static bool is_zero(const complexd& v) { return v.real() == 0.0 && v.imag() == 0.0; }
  static bool eq(const complexd& a, const complexd& b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
  }
  static bool less(const complexd& a, const complexd& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }
  static std::string str(const complexd& v) {
    return "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")";
  }
};

template <class S>
inline constexpr bool is_exact_scalar_v = ScalarOps<S>::exact;

inline GaussianRational to_exact(const GaussianRational& v) { return v; }
inline complexd to_float(const GaussianRational& v) { return v.to_complex(); }
inline complexd to_float(const complexd& v) { return v; }

}  // namespace wordser
