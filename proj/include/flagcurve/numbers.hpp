#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "flagcurve/errors.hpp"

namespace flagcurve {

using Rational = mpq_class;

// Element of Q(i). Both components exact rationals, always canonicalized.
struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long r) : re(r), im(0) {}
  GaussianRational(const Rational& r) : re(r), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return re == 1 && im == 0; }

  GaussianRational conj() const { return {re, -im}; }
  // |x|^2, an ordinary rational.
  Rational norm_sq() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    Rational n = norm_sq();
    return {re / n, -im / n};
  }
  GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

  GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline GaussianRational conj(const GaussianRational& x) { return x.conj(); }

// "3", "-5/2"; exact. Throws SyntaxError on anything else.
Rational rational_from_string(const std::string& s);

// "1.25" -> 5/4 exactly. Digits, optional sign, optional single '.'.
Rational rational_from_decimal(const std::string& s);

// Canonical form: integers bare, otherwise p/q.
std::string to_string(const Rational& r);

}  // namespace flagcurve
