#pragma once

#include "flagcurve/geometry.hpp"

namespace flagcurve {

std::uint64_t binom(std::uint32_t n, std::uint32_t k);

// The rational Veronese model: frame (1, z, ..., z^n) with ambient weights
// binom(n, r). Same metric geometry as the sqrt-binomial curve, exactly
// representable over Q(i).
HolCurve veronese_curve(std::uint32_t n);

// Closed form (j+1)(n-j)/(1+zzbar)^2; 0 <= j <= n-1.
RationalFn veronese_gamma(std::uint32_t n, std::uint32_t j);

struct VeroneseData {
  std::uint32_t n = 0, j = 0;
  RationalFn gamma;
  Rational curvature;  // 4/(n+2j(n-j))
};
VeroneseData veronese_data(std::uint32_t n, std::uint32_t j);

// Level-j component function f_{j,r} of the Veronese sequence, evaluated in
// floating point (the closed form carries sqrt-binomial factors).
std::complex<double> veronese_component(std::uint32_t n, std::uint32_t j, std::uint32_t r,
                                        std::complex<double> z);

// eta = tensor power sigma_0^{k_0} x ... x sigma_{p-1}^{k_{p-1}} of the
// Plucker sections. Sections are materialized only for small ambient
// dimension; the norm square always comes from the exact product formula.
struct TensorLift {
  std::vector<std::uint32_t> k;
  std::uint64_t ambient = 0;
  HermPoly norm_sq;                   // prod beta_j^{k_j}
  std::vector<PolyVector> sections;   // frame components per factor, in order
  Weights section_weights;            // matching diagonal weights per factor
};

TensorLift tensor_lift(const PrimitiveLift& lift, const std::vector<std::uint32_t>& k);

// Materializes the full Kronecker section and sums weighted norm squares.
// Validation-only path; refuses large ambients.
HermPoly tensor_norm_sq_direct(const PrimitiveLift& lift, const std::vector<std::uint32_t>& k);

struct LevelCertificate {
  std::uint32_t N = 0;  // power of (1+zzbar)
  Rational c;           // positive constant
  HermPoly h;           // monic holomorphic factor
  bool h_constant = false;
};

// beta = c |h(z)|^2 (1+zzbar)^N if such a decomposition exists.
std::optional<LevelCertificate> factor_certificate(const HermPoly& beta);

enum class Verdict {
  ConstantCurvatureAllMetrics,
  LocallyVeronese,
  NotConstant,
  InconclusiveAlarm,
};
const char* verdict_name(Verdict v);

struct CongruenceReport {
  Verdict verdict = Verdict::NotConstant;
  // certificates for the levels that factored, in level order
  std::vector<LevelCertificate> levels;
  // exponents N_j when the verdict is ConstantCurvatureAllMetrics
  std::vector<Rational> alpha;
};

// Factors every beta_j. All levels factor with constant h => constant
// curvature for every invariant metric; all factor but some h nonconstant =>
// locally Veronese; otherwise not constant.
CongruenceReport congruence_test(const PrimitiveLift& lift);
CongruenceReport congruence_test(const std::vector<HermPoly>& betas);

// True when the impossible case occurs: certification says NotConstant but
// the symbolic curvature for these weights is exactly constant. A true result
// falsifies the classification this engine implements.
bool falsification_alarm(const PrimitiveLift& lift, const InvariantMetric& m);

}  // namespace flagcurve
