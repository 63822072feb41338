#include "flagcurve/geometry.hpp"

#include <cmath>
#include <random>

namespace flagcurve {

InvariantMetric make_metric(std::vector<Rational> lambda) {
  if (lambda.empty()) fail(ErrorCode::WeightCountMismatch, "empty weight vector");
  for (auto& l : lambda)
    if (l <= 0) fail(ErrorCode::ZeroMetric, "invariant-metric weights must be positive");
  return InvariantMetric{std::move(lambda)};
}

const RationalFn& gamma(const PrimitiveLift& lift, std::uint32_t j) {
  if (j >= lift.gamma.size())
    fail(ErrorCode::IndexOutOfRange, "gamma level " + std::to_string(j));
  return lift.gamma[j];
}

MetricDensity induced_metric(const PrimitiveLift& lift, const InvariantMetric& m) {
  if (m.lambda.size() != lift.p())
    fail(ErrorCode::WeightCountMismatch,
         "expected " + std::to_string(lift.p()) + " weights, got " +
             std::to_string(m.lambda.size()));
  RationalFn rho;
  for (std::uint32_t j = 0; j < lift.p(); ++j)
    rho += lift.gamma[j].scal(GaussianRational(m.lambda[j]));

  // positivity sample; generic metrics of valid lifts are positive everywhere
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    std::complex<double> z(coord(rng), coord(rng));
    std::complex<double> v = rho.eval(z);
    if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
      fail(ErrorCode::NonPositive, "metric density not positive at sample point");
  }
  return MetricDensity{std::move(rho)};
}

RationalFn curvature(const RationalFn& rho) {
  if (rho.is_zero()) fail(ErrorCode::ZeroMetric, "curvature of zero metric");
  return laplace_log(rho).scal(GaussianRational(-2)) / rho;
}

RationalFn curvature(const MetricDensity& rho) { return curvature(rho.rho); }

RationalFn level_metric(const PrimitiveLift& lift, std::uint32_t j) {
  if (j > lift.p()) fail(ErrorCode::IndexOutOfRange, "level " + std::to_string(j));
  RationalFn rho;
  if (j > 0) rho += lift.gamma[j - 1];
  if (j < lift.p()) rho += lift.gamma[j];
  return rho;
}

RationalFn kahler_tan_sq(const PrimitiveLift& lift, std::uint32_t j) {
  if (j >= lift.p()) fail(ErrorCode::IndexOutOfRange, "Kahler level " + std::to_string(j));
  if (j == 0) return RationalFn();
  return lift.gamma[j - 1] / lift.gamma[j];
}

std::optional<std::vector<Rational>> per_level_constancy(const PrimitiveLift& lift) {
  HermPoly round = u_poly({Rational(1), Rational(2), Rational(1)});  // (1+zzbar)^2
  std::vector<Rational> alpha;
  for (auto& g : lift.gamma) {
    auto c = (round * g).constant_value();
    if (!c || !c->is_real() || !(c->re > 0)) return std::nullopt;
    alpha.push_back(c->re);
  }
  return alpha;
}

double latitude_eval(const RationalFn& f, double phi, double theta) {
  if (!(phi > 0.0) || !(phi < M_PI))
    fail(ErrorCode::PoleHit, "latitude outside (0,pi)");
  double r = 1.0 / std::tan(phi / 2.0);
  std::complex<double> z = r * std::complex<double>(std::cos(theta), std::sin(theta));
  std::complex<double> den = f.den().eval(z);
  if (std::abs(den) < 1e-12)
    fail(ErrorCode::PoleHit, "denominator vanishes at evaluation point");
  return (f.num().eval(z) / den).real();
}

}  // namespace flagcurve
