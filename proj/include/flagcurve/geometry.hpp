#pragma once

#include "flagcurve/curves.hpp"

namespace flagcurve {

// Consecutive weights lambda_0..lambda_{p-1} of an invariant metric on the
// flag manifold; only these enter the pulled-back metric of a primitive map.
struct InvariantMetric {
  std::vector<Rational> lambda;
};

InvariantMetric make_metric(std::vector<Rational> lambda);

// rho dz dzbar. Construction samples positivity at 10 generic points.
struct MetricDensity {
  RationalFn rho;
};

const RationalFn& gamma(const PrimitiveLift& lift, std::uint32_t j);

// rho = sum lambda_j gamma_j.
MetricDensity induced_metric(const PrimitiveLift& lift, const InvariantMetric& m);

// K = -2 laplace_log(rho) / rho, exact.
RationalFn curvature(const MetricDensity& rho);
RationalFn curvature(const RationalFn& rho);

// gamma_{j-1} + gamma_j: the metric density of the single map psi_j
// (boundary terms gamma_{-1} = gamma_p = 0 dropped). j in 0..p.
RationalFn level_metric(const PrimitiveLift& lift, std::uint32_t j);

// tan^2(theta_j/2) = gamma_{j-1}/gamma_j; j = 0 is the holomorphic end, 0.
RationalFn kahler_tan_sq(const PrimitiveLift& lift, std::uint32_t j);

inline std::optional<GaussianRational> constant_value(const RationalFn& f) {
  return f.constant_value();
}

// alpha_j with gamma_j = alpha_j/(1+zzbar)^2 for every level, if so; this is
// the constant-curvature-for-all-metrics certificate, K = 4/sum lambda alpha.
std::optional<std::vector<Rational>> per_level_constancy(const PrimitiveLift& lift);

// f at z = cot(phi/2) e^{i theta}, phi in (0,pi). Real part (pipeline values
// are real); PoleHit near poles of f or the chart.
double latitude_eval(const RationalFn& f, double phi, double theta);

}  // namespace flagcurve
