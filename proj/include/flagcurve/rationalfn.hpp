#pragma once

#include "flagcurve/hermpoly.hpp"

namespace flagcurve {

// Quotient of HermPolys, always kept reduced (bivariate gcd) with a
// graded-lex-monic denominator. Equality is cross-multiplied, so it is
// representation-independent anyway.
class RationalFn {
 public:
  RationalFn() : num_(), den_(1) {}
  RationalFn(const HermPoly& p) : num_(p), den_(1) {}
  RationalFn(long v) : num_(HermPoly(v)), den_(1) {}
  RationalFn(HermPoly num, HermPoly den);

  const HermPoly& num() const { return num_; }
  const HermPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  // Hermitian symmetry of the function, checked cross-multiplied so it does
  // not depend on how the reduction skewed num and den individually.
  bool is_real() const;

  RationalFn operator-() const;
  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;  // DivisionByZero if o == 0
  RationalFn& operator+=(const RationalFn& o) { *this = *this + o; return *this; }
  RationalFn& operator-=(const RationalFn& o) { *this = *this - o; return *this; }

  RationalFn scal(const GaussianRational& c) const;

  RationalFn conj_swap() const { return RationalFn(num_.conj_swap(), den_.conj_swap()); }

  bool operator==(const RationalFn& o) const {
    return num_ * o.den_ == o.num_ * den_;
  }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  // c with num == c*den, if the function is the constant c.
  std::optional<GaussianRational> constant_value() const;

  std::complex<double> eval(std::complex<double> z) const {
    return num_.eval(z) / den_.eval(z);
  }

 private:
  void normalize();
  HermPoly num_, den_;
};

inline RationalFn operator*(const HermPoly& p, const RationalFn& f) {
  return RationalFn(p) * f;
}

// d^2/dz dzbar of log P as an exact rational function:
// (P d2P - dP dbarP) / P^2. P must be nonzero and real.
RationalFn laplace_log(const HermPoly& P);

// Extension to quotients: laplace_log(N/D) = laplace_log N - laplace_log D,
// computed on the reduced representation. f must be nonzero and real.
RationalFn laplace_log(const RationalFn& f);

}  // namespace flagcurve
