#include "flagcurve/veronese.hpp"

#include <cmath>

namespace flagcurve {

std::uint64_t binom(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint32_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

HolCurve veronese_curve(std::uint32_t n) {
  if (n == 0) fail(ErrorCode::IndexOutOfRange, "veronese_curve needs n >= 1");
  PolyVector v;
  Weights w;
  for (std::uint32_t r = 0; r <= n; ++r) {
    v.push_back(HermPoly::monomial(GaussianRational(1), r, 0));
    w.push_back(Rational(long(binom(n, r))));
  }
  return make_curve(n + 1, {std::move(v)}, std::move(w));
}

RationalFn veronese_gamma(std::uint32_t n, std::uint32_t j) {
  if (j >= n) fail(ErrorCode::IndexOutOfRange, "veronese level out of range");
  HermPoly round = u_poly({Rational(1), Rational(2), Rational(1)});
  return RationalFn(HermPoly(long((j + 1) * (n - j))), round);
}

VeroneseData veronese_data(std::uint32_t n, std::uint32_t j) {
  VeroneseData d;
  d.n = n;
  d.j = j;
  d.gamma = veronese_gamma(n, j);
  d.curvature = Rational(4, long(n + 2 * j * (n - j)));
  d.curvature.canonicalize();
  return d;
}

std::complex<double> veronese_component(std::uint32_t n, std::uint32_t j, std::uint32_t r,
                                        std::complex<double> z) {
  if (j > n || r > n) fail(ErrorCode::IndexOutOfRange, "veronese component indices");
  double u = std::norm(z);
  std::complex<double> zb = std::conj(z);
  // z^{r-j} u^k = z^{r-j+k} zbar^k; surviving terms have k >= j-r, so the
  // combined z-exponent is never negative.
  std::complex<double> sum(0.0, 0.0);
  std::uint32_t kmin = j > r ? j - r : 0;
  std::uint32_t kmax = std::min(n - r, j);
  for (std::uint32_t k = kmin; k <= kmax; ++k) {
    double term = double(binom(r, j - k)) * double(binom(n - r, k));
    if (k % 2) term = -term;
    sum += term * std::pow(z, int(r - j + k)) * std::pow(zb, int(k));
  }
  double fact = 1.0;
  for (std::uint32_t t = 2; t <= j; ++t) fact *= t;
  return fact / std::pow(1.0 + u, int(j)) * std::sqrt(double(binom(n, r))) * sum;
}

TensorLift tensor_lift(const PrimitiveLift& lift, const std::vector<std::uint32_t>& k) {
  if (k.size() != lift.p())
    fail(ErrorCode::WeightCountMismatch, "tensor weights count  != flag length");
  for (auto kj : k)
    if (kj == 0) fail(ErrorCode::ZeroMetric, "tensor weights must be positive integers");

  TensorLift t;
  t.k = k;
  t.ambient = 1;
  t.norm_sq = HermPoly(1);
  for (std::uint32_t j = 0; j < k.size(); ++j) {
    std::uint64_t dim = lift.sigma[j].n;
    for (std::uint32_t rep = 0; rep < k[j]; ++rep) {
      if (t.ambient > 1000000ull / std::max<std::uint64_t>(dim, 1))
        fail(ErrorCode::DimensionOverflow, "tensor ambient dimension exceeds 1e6");
      t.ambient *= dim;
      t.sections.push_back(lift.sigma[j].frame[0]);
      for (auto& w : lift.sigma[j].weights) t.section_weights.push_back(w);
    }
    t.norm_sq *= lift.beta[j].pow(k[j]);
  }
  return t;
}

HermPoly tensor_norm_sq_direct(const PrimitiveLift& lift, const std::vector<std::uint32_t>& k) {
  TensorLift t = tensor_lift(lift, k);
  if (t.ambient > 100000)
    fail(ErrorCode::DimensionOverflow, "direct tensor materialization refused");
  // Walk the full Kronecker index set; component = product of the selected
  // factor components, weight = product of the selected weights.
  HermPoly acc;
  std::vector<std::uint32_t> idx(t.sections.size(), 0);
  std::size_t woff = 0;
  std::vector<std::size_t> offs;
  for (auto& s : t.sections) {
    offs.push_back(woff);
    woff += s.size();
  }
  for (;;) {
    HermPoly comp(1);
    Rational w(1);
    for (std::size_t f = 0; f < t.sections.size(); ++f) {
      comp *= t.sections[f][idx[f]];
      w *= t.section_weights[offs[f] + idx[f]];
    }
    acc += GaussianRational(w) * (comp * comp.conj_swap());
    std::size_t f = 0;
    while (f < idx.size()) {
      if (++idx[f] < t.sections[f].size()) break;
      idx[f] = 0;
      ++f;
    }
    if (f == idx.size()) break;
  }
  return acc;
}

std::optional<LevelCertificate> factor_certificate(const HermPoly& beta) {
  if (beta.is_zero()) fail(ErrorCode::ZeroPolynomial, "factor_certificate of zero");
  if (!beta.is_real()) fail(ErrorCode::NotReal, "factor_certificate of non-real polynomial");
  HermPoly round = u_poly({Rational(1), Rational(1)});  // 1 + zzbar
  auto [N, R] = factor_out(beta, round);
  auto ns = norm_square_factor(R);
  if (!ns) return std::nullopt;
  LevelCertificate cert;
  cert.N = N;
  cert.c = ns->first;
  cert.h = ns->second;
  cert.h_constant = cert.h.total_degree() == 0;
  return cert;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConstantCurvatureAllMetrics: return "CONSTANT_CURVATURE_ALL_METRICS";
    case Verdict::LocallyVeronese: return "LOCALLY_VERONESE";
    case Verdict::NotConstant: return "NOT_CONSTANT";
    case Verdict::InconclusiveAlarm: return "INCONCLUSIVE-ALARM";
  }
  return "UNKNOWN";
}

CongruenceReport congruence_test(const std::vector<HermPoly>& betas) {
  CongruenceReport rep;
  bool all_constant_h = true;
  for (auto& b : betas) {
    auto cert = factor_certificate(b);
    if (!cert) {
      rep.verdict = Verdict::NotConstant;
      return rep;
    }
    all_constant_h = all_constant_h && cert->h_constant;
    rep.levels.push_back(std::move(*cert));
  }
  if (all_constant_h) {
    rep.verdict = Verdict::ConstantCurvatureAllMetrics;
    for (auto& l : rep.levels) rep.alpha.push_back(Rational(long(l.N)));
  } else {
    rep.verdict = Verdict::LocallyVeronese;
  }
  return rep;
}

CongruenceReport congruence_test(const PrimitiveLift& lift) {
  CongruenceReport rep = congruence_test(lift.beta);
  if (rep.verdict == Verdict::ConstantCurvatureAllMetrics) {
    // exponents must agree with the direct gamma_j = alpha/(1+zzbar)^2 route
    auto alpha = per_level_constancy(lift);
    if (!alpha || std::vector<Rational>(*alpha) != rep.alpha)
      throw std::logic_error("certificate exponents disagree with per-level constancy");
  }
  return rep;
}

bool falsification_alarm(const PrimitiveLift& lift, const InvariantMetric& m) {
  CongruenceReport rep = congruence_test(lift);
  if (rep.verdict != Verdict::NotConstant) return false;
  RationalFn K = curvature(induced_metric(lift, m));
  return K.constant_value().has_value();
}

}  // namespace flagcurve
