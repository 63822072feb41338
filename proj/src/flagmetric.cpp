#include "flagcurve/flagmetric.hpp"

#include <cmath>

namespace flagcurve {

std::uint32_t degree(const PrimitiveLift& lift, std::uint32_t j) {
  if (j >= lift.sigma.size())
    fail(ErrorCode::IndexOutOfRange, "degree level " + std::to_string(j));
  std::uint32_t d = 0;
  for (auto& p : lift.sigma[j].frame[0]) d = std::max(d, p.deg_z());
  return d;
}

DegreeVector degrees(const PrimitiveLift& lift) {
  DegreeVector d;
  for (std::uint32_t j = 0; j < lift.sigma.size(); ++j) d.push_back(degree(lift, j));
  return d;
}

AreaReport area(const PrimitiveLift& lift, const InvariantMetric& m) {
  if (!lift.curve.compact)
    fail(ErrorCode::NonCompactDomain, "area undefined for a local-domain curve");
  if (m.lambda.size() != lift.p())
    fail(ErrorCode::WeightCountMismatch, "weight count does not match flag length");
  DegreeVector d = degrees(lift);
  Rational s(0);
  for (std::size_t j = 0; j < d.size(); ++j) s += m.lambda[j] * Rational(long(d[j]));
  AreaReport r;
  r.lambda = m.lambda;
  r.area_over_pi = s;
  r.area = M_PI * s.get_d();
  return r;
}

Maximizer maximize_area(const DegreeVector& delta) {
  double sq = 0;
  for (auto d : delta) sq += double(d) * double(d);
  if (sq == 0) fail(ErrorCode::ZeroDegrees, "all degrees zero");
  double norm = std::sqrt(sq);
  Maximizer m;
  m.direction = delta;
  for (auto d : delta) m.lambda.push_back(double(d) / norm);
  m.max_area = M_PI * norm;
  return m;
}

}  // namespace flagcurve
