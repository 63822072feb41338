#include "flagcurve/oracle.hpp"

#include "flagcurve/exterior.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>

namespace flagcurve {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Fixed generic sample points for rank decisions. Nothing in the pipeline is
// allowed to depend on their exact values beyond genericity.
const std::complex<double> kSample1{0.7310293, 0.2934176};
const std::complex<double> kSample2{-0.4171883, 1.2030037};

// Gram determinants are expanded in exact rational arithmetic and rounded to
// doubles once at the end.  Every double is a dyadic rational, so this is
// lossless; a floating cofactor expansion instead leaves cancellation residue
// in coefficients that should vanish, and the |z| > 1 evaluation chart
// amplifies that residue above the true signal.
HermPoly to_exact(const FloatPoly& p) {
  HermPoly q;
  for (const auto& [e, c] : p.terms())
    q.add_term(e, GaussianRational(Rational(c.real()), Rational(c.imag())));
  return q;
}

HermPoly pairing_exact(const std::vector<HermPoly>& v, const std::vector<HermPoly>& u,
                       const std::vector<GaussianRational>& w) {
  if (v.size() != u.size()) fail(ErrorCode::DimensionMismatch, "pairing of unequal lengths");
  HermPoly acc;
  for (std::size_t i = 0; i < v.size(); ++i)
    acc = acc + (v[i] * u[i].conj_swap()).scal(w[i]);
  return acc;
}

Eigen::MatrixXcd to_eigen(const std::vector<std::vector<std::complex<double>>>& rows) {
  const Eigen::Index r = Eigen::Index(rows.size());
  const Eigen::Index c = r == 0 ? 0 : Eigen::Index(rows[0].size());
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (Eigen::Index(rows[i].size()) != c)
      fail(ErrorCode::DimensionMismatch, "ragged matrix");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  return m;
}

std::vector<std::complex<double>> eval_row(const std::vector<FloatPoly>& v,
                                           std::complex<double> z) {
  std::vector<std::complex<double>> row;
  row.reserve(v.size());
  for (const auto& p : v) row.push_back(p.eval(z));
  double norm = 0.0;
  for (auto x : row) norm += std::norm(x);
  norm = std::sqrt(norm);
  if (norm > 0.0)
    for (auto& x : row) x /= norm;
  return row;
}

bool all_zero(const std::vector<FloatPoly>& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

std::vector<FloatPoly> diff_vec(const std::vector<FloatPoly>& v) {
  std::vector<FloatPoly> d;
  d.reserve(v.size());
  for (const auto& p : v) d.push_back(p.diff_z());
  return d;
}

// Periodic trapezoid over theta at radius r, with values stored first and
// summed in index order so the serial and parallel twins agree bitwise.
double theta_slice(const RealFn& g, double r, std::size_t m, bool parallel) {
  std::vector<double> vals(m);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)m; ++i) {
      const double th = 2.0 * kPi * double(i) / double(m);
      vals[std::size_t(i)] = g(std::polar(r, th));
    }
  } else {
    for (long long i = 0; i < (long long)m; ++i) {
      const double th = 2.0 * kPi * double(i) / double(m);
      vals[std::size_t(i)] = g(std::polar(r, th));
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += vals[i];
  return s * (2.0 * kPi / double(m));
}

struct QuadCtx {
  const RealFn* g = nullptr;
  double theta_tol = 0.0;
  bool parallel = false;
  std::size_t evals = 0;

  double latitude_value(double phi) {
    if (phi <= 0.0 || phi >= kPi) return 0.0;
    const double half = 0.5 * phi;
    const double r = std::cos(half) / std::sin(half);
    const double w = r / (2.0 * std::sin(half) * std::sin(half));
    double prev = theta_slice(*g, r, 8, parallel);
    for (std::size_t m = 16; m <= (1u << 15); m *= 2) {
      const double cur = theta_slice(*g, r, m, parallel);
      evals += m;
      if (std::abs(cur - prev) <= theta_tol * (1.0 + std::abs(cur))) return w * cur;
      prev = cur;
    }
    fail(ErrorCode::NoConvergence, "theta integral did not settle");
  }
};

double simpson(QuadCtx& ctx, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = ctx.latitude_value(lm), frm = ctx.latitude_value(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || ctx.evals > 50'000'000)
    fail(ErrorCode::NoConvergence, "quadrature budget exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double quadrature_impl(const RealFn& g, double tol, bool parallel) {
  if (!(tol > 0.0)) fail(ErrorCode::NonPositive, "tolerance must be positive");
  QuadCtx ctx;
  ctx.g = &g;
  ctx.theta_tol = tol * 1e-2;
  ctx.parallel = parallel;
  const double a = 0.0, b = kPi;
  const double fa = 0.0, fb = 0.0;
  const double fm = ctx.latitude_value(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double total = simpson(ctx, a, b, fa, fm, fb, whole, tol, 24);
  return total / kPi;
}

}  // namespace

FloatPoly to_float(const HermPoly& p) {
  FloatPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_complex());
  return out;
}

FloatRatFn to_float(const RationalFn& f) { return {to_float(f.num()), to_float(f.den())}; }

std::uint32_t numeric_rank(const std::vector<std::vector<std::complex<double>>>& rows) {
  if (rows.empty() || rows[0].empty()) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(rows));
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  if (top == 0.0) return 0;
  std::uint32_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double rel = sv(i) / top;
    if (rel > 1e-12 && rel < 1e-6)
      fail(ErrorCode::RankAmbiguous, "singular value in the ambiguity band");
    if (rel >= 1e-9) ++rank;
  }
  return rank;
}

FloatCurve make_float_curve(std::uint32_t n, std::vector<std::vector<FloatPoly>> frame,
                            std::vector<double> weights, bool compact) {
  if (n == 0) fail(ErrorCode::DimensionMismatch, "ambient dimension must be positive");
  if (frame.empty()) fail(ErrorCode::DimensionMismatch, "empty frame");
  if (weights.empty()) weights.assign(n, 1.0);
  if (weights.size() != n) fail(ErrorCode::WeightCountMismatch, "need one weight per coordinate");
  for (double w : weights)
    if (!(w > 0.0)) fail(ErrorCode::ZeroMetric, "weights must be positive");
  std::uint32_t max_dz = 0;
  for (const auto& v : frame) {
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "frame vector length != n");
    bool nonzero = false;
    for (const auto& p : v) {
      if (!p.is_holomorphic()) fail(ErrorCode::NonHolomorphic, "frame entries must be zbar-free");
      if (!p.is_zero()) {
        nonzero = true;
        max_dz = std::max(max_dz, p.deg_z());
      }
    }
    if (!nonzero) fail(ErrorCode::ZeroPolynomial, "zero frame vector");
  }
  // Conditioning of the stacked coefficient matrix: near-duplicate rows make
  // every later rank decision unstable, so they are rejected here.
  {
    std::vector<std::vector<std::complex<double>>> rows;
    for (const auto& v : frame) {
      std::vector<std::complex<double>> row(std::size_t(n) * (max_dz + 1), 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [e, c] : v[i].terms()) row[i * (max_dz + 1) + e.z] = c;
      double norm = 0.0;
      for (auto x : row) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (auto& x : row) x /= norm;
      rows.push_back(std::move(row));
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(rows));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-9 * sv(0))
      fail(ErrorCode::SingularGram, "frame coefficient matrix is numerically singular");
  }
  // Pointwise independence at the sample points, the float analogue of the
  // function-field rank check.
  for (auto z : {kSample1, kSample2}) {
    std::vector<std::vector<std::complex<double>>> rows;
    for (const auto& v : frame) rows.push_back(eval_row(v, z));
    if (numeric_rank(rows) != frame.size())
      fail(ErrorCode::SingularGram, "frame is numerically dependent");
  }
  FloatCurve c;
  c.n = n;
  c.frame = std::move(frame);
  c.weights = std::move(weights);
  c.compact = compact;
  return c;
}

FloatCurve to_float(const HolCurve& c) {
  std::vector<std::vector<FloatPoly>> frame;
  for (const auto& v : c.frame) {
    std::vector<FloatPoly> fv;
    for (const auto& p : v) fv.push_back(to_float(p));
    frame.push_back(std::move(fv));
  }
  std::vector<double> w;
  for (const auto& q : c.weights) w.push_back(q.get_d());
  return make_float_curve(c.n, std::move(frame), std::move(w), c.compact);
}

FloatSeq float_harmonic_sequence(const FloatCurve& c) {
  // Greedy osculating filtration: order-o derivatives of the frame, accepted
  // when they raise the evaluation rank at both sample points.
  std::vector<std::vector<FloatPoly>> selected;
  std::vector<std::vector<std::vector<std::complex<double>>>> sel_rows(2);
  std::vector<std::uint32_t> ranks;
  std::vector<std::vector<FloatPoly>> current = c.frame;
  const std::array<std::complex<double>, 2> pts{kSample1, kSample2};
  for (std::uint32_t order = 0; order <= c.n + 1; ++order) {
    if (order > 0)
      for (auto& v : current) v = diff_vec(v);
    std::uint32_t added = 0;
    for (const auto& cand : current) {
      if (all_zero(cand)) continue;
      int verdict = 0;  // +1 both raise, -1 both flat
      for (int s = 0; s < 2; ++s) {
        auto rows = sel_rows[s];
        rows.push_back(eval_row(cand, pts[s]));
        const bool raises = numeric_rank(rows) == rows.size();
        verdict += raises ? 1 : -1;
      }
      if (verdict == 0)
        fail(ErrorCode::RankAmbiguous, "sample points disagree on candidate rank");
      if (verdict > 0) {
        for (int s = 0; s < 2; ++s) sel_rows[s].push_back(eval_row(cand, pts[s]));
        selected.push_back(cand);
        ++added;
      }
    }
    if (added == 0) break;
    ranks.push_back(added);
  }
  std::uint32_t total = 0;
  for (auto k : ranks) total += k;
  if (total != c.n)
    fail(ErrorCode::RankDeficient, "osculating filtration does not exhaust the ambient space");
  FloatSeq seq;
  seq.ranks = std::move(ranks);
  std::vector<std::vector<HermPoly>> exact_sel;
  exact_sel.reserve(selected.size());
  for (const auto& v : selected) {
    std::vector<HermPoly> ev;
    ev.reserve(v.size());
    for (const auto& p : v) ev.push_back(to_exact(p));
    exact_sel.push_back(std::move(ev));
  }
  std::vector<GaussianRational> wq;
  wq.reserve(c.weights.size());
  for (double w : c.weights) wq.push_back(GaussianRational(Rational(w)));
  std::size_t cum = 0;
  for (std::size_t j = 0; j + 1 < seq.ranks.size(); ++j) {
    cum += seq.ranks[j];
    std::vector<std::vector<HermPoly>> gram(cum, std::vector<HermPoly>(cum));
    for (std::size_t a = 0; a < cum; ++a)
      for (std::size_t b = 0; b < cum; ++b)
        gram[a][b] = pairing_exact(exact_sel[b], exact_sel[a], wq);
    seq.gram_det.push_back(to_float(det_poly(std::move(gram))));
  }
  return seq;
}

FloatRatFn float_gamma_fn(const FloatSeq& s, std::uint32_t j) {
  if (j >= s.gram_det.size()) fail(ErrorCode::IndexOutOfRange, "gamma index exceeds p-1");
  const FloatPoly& G = s.gram_det[j];
  const FloatPoly Gz = G.diff_z(), Gzb = G.diff_zbar();
  return {G * G.diff_z().diff_zbar() - Gz * Gzb, G * G};
}

double float_gamma(const FloatSeq& s, std::uint32_t j, std::complex<double> z) {
  if (j >= s.gram_det.size()) fail(ErrorCode::IndexOutOfRange, "gamma index exceeds p-1");
  return LogLaplaceEval(s.gram_det[j]).at(z);
}

FloatRatFn float_metric(const FloatSeq& s, const std::vector<double>& lambda) {
  if (lambda.size() != s.gram_det.size())
    fail(ErrorCode::WeightCountMismatch, "need one coefficient per gamma");
  if (lambda.empty()) fail(ErrorCode::WeightCountMismatch, "no gammas to combine");
  FloatRatFn acc{FloatPoly(), FloatPoly(1.0)};
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    FloatRatFn g = float_gamma_fn(s, std::uint32_t(j));
    acc = {acc.num * g.den + g.num.scal(lambda[j]) * acc.den, acc.den * g.den};
  }
  return acc;
}

FloatRatFn float_level_metric(const FloatSeq& s, std::uint32_t j) {
  if (j >= s.ranks.size()) fail(ErrorCode::IndexOutOfRange, "level index exceeds p");
  const bool has_lo = j > 0, has_hi = j < s.gram_det.size();
  if (has_lo && has_hi) {
    FloatRatFn a = float_gamma_fn(s, j - 1), b = float_gamma_fn(s, j);
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  if (has_lo) return float_gamma_fn(s, j - 1);
  if (has_hi) return float_gamma_fn(s, j);
  fail(ErrorCode::ZeroMetric, "single-level flag has no neighbor gammas");
}

FloatPoly flip_poly(const FloatPoly& p) {
  if (p.is_zero()) return p;
  const std::uint32_t a = p.deg_z(), b = p.deg_zbar();
  FloatPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term({a - e.z, b - e.zb}, c);
  return out;
}

namespace {

std::complex<double> ipow(std::complex<double> w, int k) {
  if (k < 0) return 1.0 / ipow(w, -k);
  std::complex<double> acc = 1.0;
  while (k) {
    if (k & 1) acc *= w;
    w *= w;
    k >>= 1;
  }
  return acc;
}

}  // namespace

LogLaplaceEval::Part LogLaplaceEval::make_part(const FloatPoly& p) {
  return {p, p.diff_z(), p.diff_zbar(), p.diff_z().diff_zbar()};
}

double LogLaplaceEval::Part::ll(std::complex<double> z) const {
  const std::complex<double> v = p.eval(z);
  const std::complex<double> num = v * pzzb.eval(z) - pz.eval(z) * pzb.eval(z);
  return (num / (v * v)).real();
}

LogLaplaceEval::LogLaplaceEval(const FloatPoly& P)
    : num_(make_part(P)), far_num_(make_part(flip_poly(P))) {}

LogLaplaceEval::LogLaplaceEval(const FloatRatFn& f)
    : num_(make_part(f.num)),
      far_num_(make_part(flip_poly(f.num))),
      den_(make_part(f.den)),
      far_den_(make_part(flip_poly(f.den))) {}

double LogLaplaceEval::at(std::complex<double> z) const {
  if (std::abs(z) <= 1.0) {
    double v = num_.ll(z);
    if (den_) v -= den_->ll(z);
    return v;
  }
  const std::complex<double> w = 1.0 / z;
  double v = far_num_.ll(w);
  if (far_den_) v -= far_den_->ll(w);
  return v * std::norm(w) * std::norm(w);
}

CurvatureEval::CurvatureEval(FloatRatFn rho)
    : rho_(std::move(rho)),
      far_num_(flip_poly(rho_.num)),
      far_den_(flip_poly(rho_.den)),
      dz_(int(rho_.den.deg_z()) - int(rho_.num.deg_z())),
      dzb_(int(rho_.den.deg_zbar()) - int(rho_.num.deg_zbar())),
      ll_(rho_) {}

double CurvatureEval::at(std::complex<double> z) const {
  double r;
  if (std::abs(z) <= 1.0) {
    r = rho_.eval(z).real();
  } else {
    const std::complex<double> w = 1.0 / z;
    r = (far_num_.eval(w) / far_den_.eval(w) * ipow(w, dz_) * ipow(std::conj(w), dzb_)).real();
  }
  if (!(r > 0.0)) fail(ErrorCode::NonPositive, "metric density not positive at sample");
  return -2.0 * ll_.at(z) / r;
}

double float_latitude_eval(const FloatRatFn& f, double phi, double theta) {
  if (!(phi > 0.0) || !(phi < kPi)) fail(ErrorCode::PoleHit, "phi outside (0, pi)");
  const double r = std::cos(0.5 * phi) / std::sin(0.5 * phi);
  const std::complex<double> z = std::polar(r, theta);
  if (std::abs(z) <= 1.0) {
    const std::complex<double> d = f.den.eval(z);
    if (std::abs(d) < 1e-12) fail(ErrorCode::PoleHit, "denominator vanishes at sample");
    return (f.num.eval(z) / d).real();
  }
  const std::complex<double> w = 1.0 / z;
  const std::complex<double> d = flip_poly(f.den).eval(w);
  if (std::abs(d) < 1e-300) fail(ErrorCode::PoleHit, "denominator vanishes at sample");
  const int dz = int(f.den.deg_z()) - int(f.num.deg_z());
  const int dzb = int(f.den.deg_zbar()) - int(f.num.deg_zbar());
  return (flip_poly(f.num).eval(w) / d * ipow(w, dz) * ipow(std::conj(w), dzb)).real();
}

double fd_mixed_log(const RealFn& beta, std::complex<double> z, double h) {
  if (!(h > 0.0)) fail(ErrorCode::NonPositive, "step must be positive");
  const std::complex<double> dx{h, 0.0}, dy{0.0, h};
  const double c = beta(z), xp = beta(z + dx), xm = beta(z - dx), yp = beta(z + dy),
               ym = beta(z - dy);
  for (double v : {c, xp, xm, yp, ym})
    if (!(v > 0.0)) fail(ErrorCode::NonPositive, "log argument not positive on stencil");
  return 0.25 *
         (std::log(xp) + std::log(xm) + std::log(yp) + std::log(ym) - 4.0 * std::log(c)) /
         (h * h);
}

double quadrature_degree(const RealFn& g, double tol) { return quadrature_impl(g, tol, false); }

double quadrature_degree_parallel(const RealFn& g, double tol) {
  return quadrature_impl(g, tol, true);
}

std::vector<std::pair<double, double>> grid_angles(const GridSpec& g) {
  if (g.phi_count < 2 || g.theta_count < 2)
    fail(ErrorCode::DimensionMismatch, "grid needs at least 2 samples per axis");
  double lo = g.phi_lo, hi = g.phi_hi;
  if (lo == 0.0 && hi == 0.0) {
    lo = kPi / double(g.phi_count);
    hi = kPi - lo;
  }
  if (!(lo > 0.0) || !(hi < kPi) || !(lo < hi))
    fail(ErrorCode::PoleHit, "phi range must sit strictly inside (0, pi)");
  std::vector<std::pair<double, double>> out;
  out.reserve(g.phi_count * g.theta_count);
  for (std::size_t i = 0; i < g.phi_count; ++i) {
    const double phi = lo + (hi - lo) * double(i) / double(g.phi_count - 1);
    for (std::size_t j = 0; j < g.theta_count; ++j)
      out.emplace_back(phi, 2.0 * kPi * double(j) / double(g.theta_count));
  }
  return out;
}

std::vector<std::complex<double>> grid_points(const GridSpec& g) {
  std::vector<std::complex<double>> out;
  for (auto [phi, theta] : grid_angles(g)) {
    const double r = std::cos(0.5 * phi) / std::sin(0.5 * phi);
    out.push_back(std::polar(r, theta));
  }
  return out;
}

std::vector<double> grid_eval_serial(const RealFn& f,
                                     const std::vector<std::complex<double>>& pts) {
  std::vector<double> out(pts.size());
  for (long long i = 0; i < (long long)pts.size(); ++i) out[std::size_t(i)] = f(pts[std::size_t(i)]);
  return out;
}

std::vector<double> grid_eval_parallel(const RealFn& f,
                                       const std::vector<std::complex<double>>& pts) {
  std::vector<double> out(pts.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < (long long)pts.size(); ++i) out[std::size_t(i)] = f(pts[std::size_t(i)]);
  return out;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace flagcurve
