#include "flagcurve/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <memory>
#include <random>
#include <sstream>

#include "flagcurve/flagmetric.hpp"
#include "flagcurve/parser.hpp"
#include "flagcurve/veronese.hpp"

namespace flagcurve {
namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::NonHolomorphic:
    case ErrorCode::BadCurveFile:
      return 2;
    case ErrorCode::WeightCountMismatch:
      return 4;
    case ErrorCode::NonCompactDomain:
      return 5;
    case ErrorCode::ExactBackendRequired:
      return 6;
    default:
      return 3;
  }
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ---- display helpers ------------------------------------------------------

// p == base^m for the largest m (0 when p == 1 only if p is the constant 1).
std::optional<std::uint32_t> power_of(const HermPoly& p, const HermPoly& base) {
  HermPoly cur = p;
  std::uint32_t m = 0;
  while (!(cur.total_degree() == 0)) {
    auto q = divide_exact(cur, base);
    if (!q) return std::nullopt;
    cur = *q;
    ++m;
  }
  if (!(cur == HermPoly(1))) return std::nullopt;
  return m;
}

bool rational_square_root(const Rational& q, Rational& out) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = Rational(rn) / Rational(rd);
  return true;
}

// Square root of a polynomial with real leading coefficient, for display of
// squared denominators. Subtract-leading-term descent; nullopt when p is not
// a perfect square.
std::optional<HermPoly> poly_sqrt(const HermPoly& p) {
  if (p.is_zero()) return HermPoly();
  const Exp le = p.leading_exp();
  const GaussianRational lc = p.leading_coeff();
  if (le.z % 2 != 0 || le.zb % 2 != 0 || !lc.is_real()) return std::nullopt;
  Rational root;
  if (!rational_square_root(lc.re, root)) return std::nullopt;
  HermPoly b = HermPoly::monomial(GaussianRational(root), le.z / 2, le.zb / 2);
  const ExpLess less;
  Exp last = le;  // exponent of the last added term of b, strictly decreasing
  for (int guard = 0; guard < 4096; ++guard) {
    HermPoly r = p - b * b;
    if (r.is_zero()) return b;
    const Exp re = r.leading_exp();
    const Exp be = b.leading_exp();
    if (re.z < be.z || re.zb < be.zb) return std::nullopt;
    Exp te{std::uint32_t(re.z - be.z), std::uint32_t(re.zb - be.zb)};
    if (!less(te, last)) return std::nullopt;
    last = te;
    const GaussianRational tc = r.leading_coeff() / (b.leading_coeff() + b.leading_coeff());
    b = b + HermPoly::monomial(tc, te.z, te.zb);
  }
  return std::nullopt;
}

std::string pow_suffix(std::uint32_t m) {
  return m == 1 ? std::string() : "^" + std::to_string(m);
}

// Human form: prefers "c / (1 + z zbar)^m" and squared denominators; falls
// back to the canonical pair. Display only, never parsed back.
std::string pretty(const RationalFn& f) {
  const HermPoly one_u = u_poly({Rational(1), Rational(1)});
  if (f.den() == HermPoly(1)) return to_string(f.num());
  if (auto m = power_of(f.den(), one_u)) {
    if (f.num().num_terms() == 1)
      return to_string(f.num()) + " / (1 + z zbar)" + pow_suffix(*m);
    return "(" + to_string(f.num()) + ") / (1 + z zbar)" + pow_suffix(*m);
  }
  if (auto r = poly_sqrt(f.den())) {
    return "(" + to_string(f.num()) + ") / (" + to_string(*r) + ")^2";
  }
  return to_string(f);
}

template <class C>
bool radial(const BasicPoly<C>& p) {
  for (const auto& [e, c] : p.terms())
    if (e.z != e.zb) return false;
  return true;
}

std::string join_u32(const std::vector<std::uint32_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string flag_type(const std::vector<std::uint32_t>& ranks) {
  return "F_{" + join_u32(ranks) + "}";
}

// ---- curve file parsing ---------------------------------------------------

Rational weight_from_string(const std::string& s) {
  if (s.find('.') != std::string::npos) return rational_from_decimal(s);
  return rational_from_string(s);
}

[[noreturn]] void bad_file(const std::string& msg) { fail(ErrorCode::BadCurveFile, msg); }

CurveFile parse_curve_impl(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad_file(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad_file("top level must be an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "n" && k != "backend" && k != "compact" && k != "frames" && k != "weights")
      bad_file("unknown field '" + k + "'");
  }
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    bad_file("'n' must be a positive integer");
  if (!j.contains("backend") || !j["backend"].is_string()) bad_file("'backend' must be a string");
  const std::string backend = j["backend"].get<std::string>();
  if (backend != "exact" && backend != "float") bad_file("'backend' must be \"exact\" or \"float\"");
  if (!j.contains("compact") || !j["compact"].is_boolean()) bad_file("'compact' must be a boolean");
  if (!j.contains("frames") || !j["frames"].is_array() || j["frames"].empty())
    bad_file("'frames' must be a non-empty array");
  const auto n = j["n"].get<std::uint32_t>();
  const bool compact = j["compact"].get<bool>();

  std::vector<PolyVector> frames;
  for (const auto& row : j["frames"]) {
    if (!row.is_array() || row.empty()) bad_file("each frame must be a non-empty array");
    PolyVector v;
    for (const auto& cell : row) {
      if (!cell.is_string()) bad_file("frame entries must be polynomial strings");
      v.push_back(parse_hol(cell.get<std::string>()));
    }
    frames.push_back(std::move(v));
  }

  Weights weights;
  if (j.contains("weights")) {
    if (!j["weights"].is_array()) bad_file("'weights' must be an array");
    for (const auto& w : j["weights"]) {
      if (w.is_number_integer())
        weights.emplace_back(long(w.get<long long>()));
      else if (w.is_string())
        weights.push_back(weight_from_string(w.get<std::string>()));
      else if (w.is_number_float() && backend == "float")
        weights.push_back(Rational(w.get<double>()));
      else
        bad_file("weights must be integers or rational strings");
    }
  }

  CurveFile cf;
  cf.backend = backend;
  if (backend == "exact") {
    cf.curve = make_curve(n, std::move(frames), std::move(weights), compact);
  } else {
    std::vector<std::vector<FloatPoly>> ff;
    for (const auto& v : frames) {
      std::vector<FloatPoly> fv;
      for (const auto& p : v) fv.push_back(to_float(p));
      ff.push_back(std::move(fv));
    }
    std::vector<double> fw;
    for (const auto& q : weights) fw.push_back(q.get_d());
    cf.curve = make_float_curve(n, std::move(ff), std::move(fw), compact);
  }
  return cf;
}

// ---- lambda option --------------------------------------------------------

struct LambdaArg {
  bool given = false;
  bool decimal = false;
  std::vector<Rational> values;
};

LambdaArg parse_lambda(const std::string& s) {
  LambdaArg a;
  if (s.empty()) return a;
  a.given = true;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) fail(ErrorCode::SyntaxError, "empty weight in --lambda");
    if (tok.find('.') != std::string::npos) a.decimal = true;
    a.values.push_back(weight_from_string(tok));
  }
  if (!a.given || a.values.empty()) fail(ErrorCode::SyntaxError, "--lambda needs at least one weight");
  return a;
}

std::vector<Rational> lambda_or_ones(const LambdaArg& a, std::size_t p) {
  if (a.given) return a.values;
  return std::vector<Rational>(p, Rational(1));
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

// ---- command bodies -------------------------------------------------------

struct Options {
  LambdaArg lambda;
  std::size_t samples = 64;
  std::string out_path;
  bool json_mode = false;
};

void emit(std::ostream& out, const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail(ErrorCode::BadCurveFile, "cannot open output file " + out_path);
  f << text;
}

int cmd_sequence(const CurveFile& cf, const Options& opt, std::ostream& out) {
  if (cf.is_exact()) {
    PrimitiveLift lift = primitive_lift(cf.exact());
    const auto ranks = lift.seq.ranks();
    if (opt.json_mode) {
      json r;
      r["flag"] = flag_type(ranks);
      r["ranks"] = ranks;
      json gs = json::array();
      for (const auto& g : lift.gamma) gs.push_back({{"num", to_string(g.num())}, {"den", to_string(g.den())}});
      r["gammas"] = std::move(gs);
      out << r.dump(2) << "\n";
      return 0;
    }
    out << "flag: " << flag_type(ranks) << "\n";
    out << "ranks: " << join_u32(ranks) << "\n";
    for (std::size_t jx = 0; jx < lift.gamma.size(); ++jx)
      out << "gamma_" << jx << " = " << pretty(lift.gamma[jx]) << "\n";
    return 0;
  }
  FloatSeq seq = float_harmonic_sequence(cf.fl());
  if (opt.json_mode) {
    json r;
    r["flag"] = flag_type(seq.ranks);
    r["ranks"] = seq.ranks;
    json gs = json::array();
    for (std::size_t jx = 0; jx < seq.gram_det.size(); ++jx)
      gs.push_back(float_gamma(seq, std::uint32_t(jx), {1.0, 0.0}));
    r["gamma_at_1"] = std::move(gs);
    out << r.dump(2) << "\n";
    return 0;
  }
  out << "flag: " << flag_type(seq.ranks) << "\n";
  out << "ranks: " << join_u32(seq.ranks) << "\n";
  for (std::size_t jx = 0; jx < seq.gram_det.size(); ++jx)
    out << "gamma_" << jx << "(z=1) = " << fmt9(float_gamma(seq, std::uint32_t(jx), {1.0, 0.0}))
        << "\n";
  out << "note: canonical gamma forms require the exact backend\n";
  return 0;
}

int float_curvature_report(const FloatSeq& seq, const std::vector<double>& lam,
                           const Options& opt, std::ostream& out) {
  if (lam.size() != seq.gram_det.size())
    fail(ErrorCode::WeightCountMismatch, "need one weight per gamma");
  CurvatureEval ev(float_metric(seq, lam));
  GridSpec spec;
  spec.phi_count = 16;
  spec.theta_count = 8;
  std::vector<double> vals = grid_eval_serial([&](std::complex<double> z) { return ev.at(z); },
                                              grid_points(spec));
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= double(vals.size());
  const double sp = spread(vals);
  const bool constant = sp < 1e-8;
  if (opt.json_mode) {
    json r;
    r["K_mean"] = mean;
    r["K_spread"] = sp;
    r["constant"] = constant;
    out << r.dump(2) << "\n";
    return 0;
  }
  out << "K sampled on a 16x8 latitude grid\n";
  out << "K mean = " << fmt9(mean) << ", spread = " << fmt9(sp) << "\n";
  out << "verdict: " << (constant ? "constant within 1e-8" : "nonconstant") << "\n";
  return 0;
}

int cmd_curvature(const CurveFile& cf, const Options& opt, std::ostream& out, std::ostream& err) {
  if (cf.is_exact() && !opt.lambda.decimal) {
    PrimitiveLift lift = primitive_lift(cf.exact());
    const auto lam = lambda_or_ones(opt.lambda, lift.gamma.size());
    InvariantMetric m = make_metric(lam);
    MetricDensity rho = induced_metric(lift, m);
    RationalFn K = curvature(rho);
    auto cv = constant_value(K);
    if (opt.json_mode) {
      json r;
      r["K"] = {{"num", to_string(K.num())}, {"den", to_string(K.den())}};
      if (cv)
        r["constant"] = to_string(cv->re);
      else
        r["constant"] = nullptr;
      out << r.dump(2) << "\n";
      return 0;
    }
    out << "K = " << pretty(K) << "\n";
    if (cv)
      out << "verdict: constant, K = " << to_string(cv->re) << "\n";
    else
      out << "verdict: nonconstant\n";
    return 0;
  }
  if (opt.lambda.decimal)
    err << "warning: decimal weights, evaluating in float mode\n";
  FloatSeq seq = cf.is_exact() ? float_harmonic_sequence(to_float(cf.exact()))
                               : float_harmonic_sequence(cf.fl());
  const auto lam = lambda_or_ones(opt.lambda, seq.gram_det.size());
  return float_curvature_report(seq, to_doubles(lam), opt, out);
}

int cmd_degrees(const CurveFile& cf, const Options& opt, bool maximize, std::ostream& out) {
  DegreeVector delta;
  std::vector<double> raw;
  bool is_compact = cf.is_exact() ? cf.exact().compact : cf.fl().compact;
  if (!is_compact) fail(ErrorCode::NonCompactDomain, "degrees need a curve on all of S^2");
  if (cf.is_exact()) {
    PrimitiveLift lift = primitive_lift(cf.exact());
    delta = degrees(lift);
  } else {
    FloatSeq seq = float_harmonic_sequence(cf.fl());
    for (std::size_t jx = 0; jx < seq.gram_det.size(); ++jx) {
      LogLaplaceEval ll(seq.gram_det[jx]);
      const double d =
          quadrature_degree([&](std::complex<double> z) { return ll.at(z); }, 1e-6);
      raw.push_back(d);
      delta.push_back(std::uint32_t(std::llround(d)));
    }
  }
  json r;
  std::ostringstream text;
  text << "delta: " << join_u32(delta) << "\n";
  r["delta"] = delta;
  if (!raw.empty()) {
    std::ostringstream rawline;
    for (std::size_t i = 0; i < raw.size(); ++i) rawline << (i ? "," : "") << fmt6(raw[i]);
    text << "delta_quadrature: " << rawline.str() << "\n";
    r["delta_quadrature"] = raw;
  }
  if (maximize) {
    Maximizer mx = maximize_area(delta);
    std::ostringstream lam;
    for (std::size_t i = 0; i < mx.lambda.size(); ++i) lam << (i ? "," : "") << fmt6(mx.lambda[i]);
    text << "direction: " << join_u32(mx.direction) << "\n";
    text << "lambda*: " << lam.str() << "\n";
    text << "max area: " << fmt6(mx.max_area) << " (pi * " << fmt6(mx.max_area / kPi) << ")\n";
    r["direction"] = mx.direction;
    r["lambda"] = mx.lambda;
    r["max_area"] = mx.max_area;
  }
  if (opt.json_mode)
    out << r.dump(2) << "\n";
  else
    out << text.str();
  return 0;
}

int cmd_plot(const CurveFile& cf, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::size_t N = opt.samples;
  if (N < 2) fail(ErrorCode::DimensionMismatch, "--samples must be at least 2");
  // One K evaluator regardless of backend.
  std::function<double(double, double)> value;
  bool is_radial = false;
  if (cf.is_exact() && !opt.lambda.decimal) {
    PrimitiveLift lift = primitive_lift(cf.exact());
    InvariantMetric m = make_metric(lambda_or_ones(opt.lambda, lift.gamma.size()));
    auto K = std::make_shared<RationalFn>(curvature(induced_metric(lift, m)));
    is_radial = radial(K->num()) && radial(K->den());
    value = [K](double phi, double theta) { return latitude_eval(*K, phi, theta); };
  } else {
    if (opt.lambda.decimal) err << "warning: decimal weights, evaluating in float mode\n";
    FloatSeq seq = cf.is_exact() ? float_harmonic_sequence(to_float(cf.exact()))
                                 : float_harmonic_sequence(cf.fl());
    const auto lam = lambda_or_ones(opt.lambda, seq.gram_det.size());
    if (lam.size() != seq.gram_det.size())
      fail(ErrorCode::WeightCountMismatch, "need one weight per gamma");
    FloatRatFn rho = float_metric(seq, to_doubles(lam));
    is_radial = radial(rho.num) && radial(rho.den);
    auto ev = std::make_shared<CurvatureEval>(rho);
    value = [ev](double phi, double theta) {
      const double r = std::cos(0.5 * phi) / std::sin(0.5 * phi);
      return ev->at(std::polar(r, theta));
    };
  }
  std::ostringstream csv;
  json rows = json::array();
  csv << "phi,K\n";
  const double lo = kPi / double(N), hi = kPi - kPi / double(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double phi = N == 1 ? lo : lo + (hi - lo) * double(i) / double(N - 1);
    std::vector<double> phases;
    bool pole = false;
    for (int k = 0; k < 8 && !pole; ++k) {
      try {
        phases.push_back(value(phi, 2.0 * kPi * double(k) / 8.0));
      } catch (const Error& e) {
        if (e.code == ErrorCode::PoleHit || e.code == ErrorCode::NonPositive)
          pole = true;
        else
          throw;
      }
    }
    if (pole) {
      csv << fmt9(phi) << ",\n";
      rows.push_back({phi, nullptr});
      continue;
    }
    if (is_radial && spread(phases) >= 1e-8)
      throw std::logic_error("rotationally symmetric input produced phase spread");
    double mean = 0.0;
    for (double v : phases) mean += v;
    mean /= double(phases.size());
    csv << fmt9(phi) << "," << fmt9(mean) << "\n";
    rows.push_back({phi, mean});
  }
  if (opt.json_mode) {
    json r;
    r["rows"] = std::move(rows);
    emit(out, r.dump(2) + "\n", opt.out_path);
  } else {
    emit(out, csv.str(), opt.out_path);
  }
  return 0;
}

int cmd_certify(const CurveFile& cf, const Options& opt, std::ostream& out) {
  if (!cf.is_exact())
    fail(ErrorCode::ExactBackendRequired, "certification factors exact norm squares");
  PrimitiveLift lift = primitive_lift(cf.exact());
  CongruenceReport rep = congruence_test(lift);
  bool alarm = false;
  std::vector<std::string> alarm_lines;
  if (rep.verdict == Verdict::NotConstant) {
    // Spot-check the classification: constant symbolic curvature must imply a
    // factorization certificate.
    std::mt19937 g(777);
    std::uniform_int_distribution<int> num(1, 5), den(1, 3);
    for (int t = 0; t < 3; ++t) {
      std::vector<Rational> lam;
      for (std::size_t jx = 0; jx < lift.gamma.size(); ++jx)
        lam.emplace_back(Rational(num(g)) / Rational(den(g)));
      InvariantMetric m = make_metric(lam);
      if (falsification_alarm(lift, m)) {
        alarm = true;
        std::ostringstream os;
        for (std::size_t i = 0; i < lam.size(); ++i) os << (i ? "," : "") << to_string(lam[i]);
        alarm_lines.push_back(os.str());
      }
    }
  }
  const char* verdict = alarm ? verdict_name(Verdict::InconclusiveAlarm) : verdict_name(rep.verdict);
  if (opt.json_mode) {
    json r;
    r["verdict"] = verdict;
    json levels = json::array();
    for (const auto& lc : rep.levels)
      levels.push_back({{"N", lc.N},
                        {"c", to_string(lc.c)},
                        {"h", to_string(lc.h)},
                        {"h_constant", lc.h_constant}});
    r["levels"] = std::move(levels);
    json alpha = json::array();
    for (const auto& a : rep.alpha) alpha.push_back(to_string(a));
    r["alpha"] = std::move(alpha);
    r["alarm"] = alarm;
    out << r.dump(2) << "\n";
    return 0;
  }
  out << "verdict: " << verdict << "\n";
  if (!rep.alpha.empty()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < rep.alpha.size(); ++i) os << (i ? "," : "") << to_string(rep.alpha[i]);
    out << "alpha: " << os.str() << "\n";
  }
  for (std::size_t jx = 0; jx < rep.levels.size(); ++jx) {
    const auto& lc = rep.levels[jx];
    out << "level " << jx << ": beta = c |h|^2 (1 + z zbar)^N with c = " << to_string(lc.c)
        << ", N = " << lc.N << ", h = " << to_string(lc.h) << "\n";
  }
  if (rep.verdict == Verdict::NotConstant)
    out << "level " << rep.levels.size() << ": norm square does not factor\n";
  if (rep.verdict == Verdict::NotConstant) {
    if (alarm)
      for (const auto& l : alarm_lines)
        out << "ALARM: constant curvature without certificate at lambda = " << l << "\n";
    else
      out << "alarm: none (3 random metrics)\n";
  }
  return 0;
}

}  // namespace

CurveFile parse_curve_json(const std::string& text) { return parse_curve_impl(text); }

CurveFile load_curve_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::BadCurveFile, "cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_curve_impl(buf.str());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"harmonic sequences of holomorphic curves: exact flag-manifold geometry"};
  app.require_subcommand(1);

  std::string file, lambda_str, out_path;
  std::size_t samples = 64;
  bool json_mode = false;

  auto add_common = [&](CLI::App* s, bool with_lambda, bool with_plot) {
    s->add_option("file", file, "curve file (JSON)")->required();
    if (with_lambda)
      s->add_option("--lambda", lambda_str, "comma-separated metric weights (default all 1)");
    if (with_plot) {
      s->add_option("--samples", samples, "latitude sample count (default 64)");
      s->add_option("--out", out_path, "write output to a file instead of stdout");
    }
    s->add_flag("--json", json_mode, "machine-readable output");
  };

  CLI::App* sc_sequence = app.add_subcommand("sequence", "harmonic sequence ranks and gammas");
  add_common(sc_sequence, false, false);
  CLI::App* sc_curvature = app.add_subcommand("curvature", "Gaussian curvature of the induced metric");
  add_common(sc_curvature, true, false);
  CLI::App* sc_degrees = app.add_subcommand("degrees", "Plucker degrees of the lift");
  add_common(sc_degrees, false, false);
  CLI::App* sc_maximize = app.add_subcommand("maximize", "area-maximizing invariant metric");
  add_common(sc_maximize, false, false);
  CLI::App* sc_plot = app.add_subcommand("plot", "curvature along the latitude as CSV");
  add_common(sc_plot, true, true);
  CLI::App* sc_certify = app.add_subcommand("certify", "constant-curvature certification");
  add_common(sc_certify, false, false);

  std::vector<std::string> argv_store;
  argv_store.push_back("flagcurve");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "flagcurve: " << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Options opt;
    opt.lambda = parse_lambda(lambda_str);
    opt.samples = samples;
    opt.out_path = out_path;
    opt.json_mode = json_mode;
    CurveFile cf = load_curve_file(file);
    if (cmd == "sequence") return cmd_sequence(cf, opt, out);
    if (cmd == "curvature") return cmd_curvature(cf, opt, out, err);
    if (cmd == "degrees") return cmd_degrees(cf, opt, false, out);
    if (cmd == "maximize") return cmd_degrees(cf, opt, true, out);
    if (cmd == "plot") return cmd_plot(cf, opt, out, err);
    if (cmd == "certify") return cmd_certify(cf, opt, out);
    err << "flagcurve: unknown command " << cmd << "\n";
    return 2;
  } catch (const Error& e) {
    err << "flagcurve " << cmd << ": " << e.what() << "\n";
    return exit_code_for(e.code);
  } catch (const std::exception& e) {
    err << "flagcurve " << cmd << ": internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace flagcurve
