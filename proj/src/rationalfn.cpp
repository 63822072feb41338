#include "flagcurve/rationalfn.hpp"

namespace flagcurve {

RationalFn::RationalFn(HermPoly num, HermPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = HermPoly(1);
    return;
  }
  HermPoly g = gcd_bivariate(num_, den_);
  num_ = *divide_exact(num_, g);
  den_ = *divide_exact(den_, g);
  GaussianRational c = den_.leading_coeff().inverse();
  num_ = num_.scal(c);
  den_ = den_.scal(c);
}

bool RationalFn::is_real() const {
  return num_.conj_swap() * den_ == den_.conj_swap() * num_;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
  return RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::scal(const GaussianRational& c) const {
  return RationalFn(num_.scal(c), den_);
}

std::optional<GaussianRational> RationalFn::constant_value() const {
  if (num_.is_zero()) return GaussianRational(0);
  if (!(num_.leading_exp() == den_.leading_exp())) return std::nullopt;
  GaussianRational c = num_.leading_coeff() / den_.leading_coeff();
  if (num_ == den_.scal(c)) return c;
  return std::nullopt;
}

namespace {
// The defining formula, without the reality check; used for both overloads.
RationalFn laplace_log_raw(const HermPoly& P) {
  HermPoly pz = P.diff_z(), pzb = P.diff_zbar();
  return RationalFn(P * pz.diff_zbar() - pz * pzb, P * P);
}
}  // namespace

RationalFn laplace_log(const HermPoly& P) {
  if (P.is_zero()) fail(ErrorCode::ZeroPolynomial, "laplace_log of zero");
  if (!P.is_real()) fail(ErrorCode::NotReal, "laplace_log of non-real polynomial");
  return laplace_log_raw(P);
}

RationalFn laplace_log(const RationalFn& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "laplace_log of zero");
  if (!f.is_real()) fail(ErrorCode::NotReal, "laplace_log of non-real function");
  return laplace_log_raw(f.num()) - laplace_log_raw(f.den());
}

}  // namespace flagcurve
