#pragma once

#include "flagcurve/geometry.hpp"

namespace flagcurve {

using DegreeVector = std::vector<std::uint32_t>;

// Algebraic degree of the level-j Plucker curve: max component degree of the
// coprime section. Equals the analytic degree for curves on all of S^2.
std::uint32_t degree(const PrimitiveLift& lift, std::uint32_t j);
DegreeVector degrees(const PrimitiveLift& lift);

struct AreaReport {
  std::vector<Rational> lambda;
  Rational area_over_pi;  // exact: sum lambda_j delta_j
  double area;
  bool maximizer = false;
};

// A = pi sum lambda_j delta_j, exact in the rational part. Compact case only.
AreaReport area(const PrimitiveLift& lift, const InvariantMetric& m);

struct Maximizer {
  DegreeVector direction;      // the exact integer direction, = delta
  std::vector<double> lambda;  // delta / |delta|, the unique argmax on sum lambda^2 = 1
  double max_area;             // pi |delta|
};

Maximizer maximize_area(const DegreeVector& delta);

}  // namespace flagcurve
