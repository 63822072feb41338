// Compares the serial and OpenMP grid/quadrature kernels on a Veronese
// curvature evaluator and checks bitwise agreement.

#include <chrono>
#include <cstdio>
#include <vector>

#include "flagcurve/oracle.hpp"
#include "flagcurve/parser.hpp"
#include "flagcurve/veronese.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace flagcurve;

namespace {

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  FloatSeq seq = float_harmonic_sequence(to_float(veronese_curve(5)));
  CurvatureEval ev(float_metric(seq, std::vector<double>(seq.gram_det.size(), 1.0)));
  RealFn f = [&](std::complex<double> z) { return ev.at(z); };

  GridSpec spec;
  spec.phi_count = 256;
  spec.theta_count = 64;
  const auto pts = grid_points(spec);

  double t0 = now();
  const auto serial = grid_eval_serial(f, pts);
  double t1 = now();
  const auto parallel = grid_eval_parallel(f, pts);
  double t2 = now();

  bool same = serial == parallel;
  std::printf("grid %zu points: serial %.3fs, parallel %.3fs, speedup %.2fx, bitwise %s\n",
              pts.size(), t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1 > 0 ? t2 - t1 : 1e-9),
              same ? "EQUAL" : "DIFFERENT");

  FloatRatFn g0 = float_gamma_fn(seq, 0);
  LogLaplaceEval ll(seq.gram_det[0]);
  RealFn gamma0 = [&](std::complex<double> z) { return ll.at(z); };

  t0 = now();
  const double ds = quadrature_degree(gamma0, 1e-8);
  t1 = now();
  const double dp = quadrature_degree_parallel(gamma0, 1e-8);
  t2 = now();
  std::printf("quadrature: serial %.3fs (%.12f), parallel %.3fs (%.12f), bitwise %s\n",
              t1 - t0, ds, t2 - t1, dp, ds == dp ? "EQUAL" : "DIFFERENT");
  return same && ds == dp ? 0 : 1;
}
