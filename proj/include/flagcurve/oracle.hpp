#pragma once

#include <functional>

#include "flagcurve/curves.hpp"

namespace flagcurve {

// Floating counterpart of HolCurve for frames with irrational coefficients
// (sqrt-binomial Veronese entries and friends).
struct FloatCurve {
  std::uint32_t n = 0;
  std::vector<std::vector<FloatPoly>> frame;
  std::vector<double> weights;
  bool compact = true;
};

// Validates holomorphy, weight positivity, and numeric independence of the
// stacked coefficient matrix (relative smallest singular value > 1e-9).
FloatCurve make_float_curve(std::uint32_t n, std::vector<std::vector<FloatPoly>> frame,
                            std::vector<double> weights = {}, bool compact = true);

FloatCurve to_float(const HolCurve& c);

struct FloatRatFn {
  FloatPoly num, den;

  std::complex<double> eval(std::complex<double> z) const {
    return num.eval(z) / den.eval(z);
  }
};

FloatRatFn to_float(const RationalFn& f);

FloatPoly to_float(const HermPoly& p);

// w^a wbar^b P(1/w, 1/wbar) with a = deg_z P, b = deg_zbar P: the chart at
// infinity. High-degree evaluations switch to it at |z| > 1 to stay in range.
FloatPoly flip_poly(const FloatPoly& p);

// Pointwise d^2/dzdzbar log f for a positive rational function, from the
// symbolic derivatives of its parts (machine precision; no differencing).
// Uses LL_z(P)(z) = |w|^4 LL_w(flip P)(w), w = 1/z, outside the unit disk.
class LogLaplaceEval {
 public:
  explicit LogLaplaceEval(const FloatPoly& P);
  explicit LogLaplaceEval(const FloatRatFn& f);
  double at(std::complex<double> z) const;

 private:
  struct Part {
    FloatPoly p, pz, pzb, pzzb;
    double ll(std::complex<double> z) const;
  };
  static Part make_part(const FloatPoly& p);
  Part num_, far_num_;
  std::optional<Part> den_, far_den_;
};

// K = -2 laplace_log(rho)/rho pointwise; rho evaluated in the same two-chart
// scheme as the log-Laplacian.
class CurvatureEval {
 public:
  explicit CurvatureEval(FloatRatFn rho);
  double at(std::complex<double> z) const;

 private:
  FloatRatFn rho_;
  FloatPoly far_num_, far_den_;
  int dz_ = 0, dzb_ = 0;  // degree gaps den - num, the w-power of rho at infinity
  LogLaplaceEval ll_;
};

// Osculating ranks and per-level Gram determinants of a float curve. The Gram
// determinant differs from the Plucker norm square by |holomorphic content|^2,
// which laplace-log kills, so gamma_j evaluates exactly from it.
struct FloatSeq {
  std::vector<std::uint32_t> ranks;   // k_0..k_p
  std::vector<FloatPoly> gram_det;    // levels j = 0..p-1
  std::uint32_t p() const { return std::uint32_t(ranks.size()) - 1; }
};

// Rank decisions: singular values of the candidate evaluations at generic
// sample points; relative sv in (1e-12, 1e-6) is RankAmbiguous, decision line
// 1e-9. RankDeficient when the filtration does not exhaust the ambient space.
FloatSeq float_harmonic_sequence(const FloatCurve& c);

FloatRatFn float_gamma_fn(const FloatSeq& s, std::uint32_t j);
double float_gamma(const FloatSeq& s, std::uint32_t j, std::complex<double> z);

// sum lambda_j gamma_j as one rational function (common denominator).
FloatRatFn float_metric(const FloatSeq& s, const std::vector<double>& lambda);
// gamma_{j-1} + gamma_j, boundary terms dropped; j in 0..p.
FloatRatFn float_level_metric(const FloatSeq& s, std::uint32_t j);

double float_latitude_eval(const FloatRatFn& f, double phi, double theta);

using RealFn = std::function<double(std::complex<double>)>;

// (1/4)(d2/dx2 + d2/dy2) log beta by central differences; NonPositive when a
// stencil point is not positive.
double fd_mixed_log(const RealFn& beta, std::complex<double> z, double h);

// (1/pi) integral of g over the plane, via z = cot(phi/2) e^{i theta}:
// adaptive Simpson in phi over doubling trapezoid sums in theta.
// The _parallel twin splits theta slices across threads; per-slice values are
// stored and summed serially, so both produce bitwise-identical results.
double quadrature_degree(const RealFn& g, double tol);
double quadrature_degree_parallel(const RealFn& g, double tol);

struct GridSpec {
  std::size_t phi_count = 64;
  std::size_t theta_count = 8;
  // 0 = auto: [pi/phi_count, pi - pi/phi_count]
  double phi_lo = 0.0, phi_hi = 0.0;
};

std::vector<std::pair<double, double>> grid_angles(const GridSpec& g);
std::vector<std::complex<double>> grid_points(const GridSpec& g);

std::vector<double> grid_eval_serial(const RealFn& f,
                                     const std::vector<std::complex<double>>& pts);
std::vector<double> grid_eval_parallel(const RealFn& f,
                                       const std::vector<std::complex<double>>& pts);

double spread(const std::vector<double>& v);

// Relative-threshold numeric rank of a rows-by-cols complex matrix.
std::uint32_t numeric_rank(const std::vector<std::vector<std::complex<double>>>& rows);

}  // namespace flagcurve
