#include "flagcurve/hermpoly.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace flagcurve {

namespace {

HermPoly monic(const HermPoly& p) {
  if (p.is_zero()) return p;
  return p.scal(p.leading_coeff().inverse());
}

// zbar-leading layer of P as a polynomial in z alone.
HermPoly zbar_lead_layer(const HermPoly& p, std::uint32_t d) {
  HermPoly r;
  for (auto& [e, c] : p.terms())
    if (e.zb == d) r.add_term(Exp{e.z, 0}, c);
  return r;
}

// Nearest integer to x / n for n > 0.
mpz_class round_div(const mpz_class& x, const mpz_class& n) {
  mpz_class q, num = 2 * x + n, den = 2 * n;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// gcd of Gaussian integers (re, im pairs) by the Euclidean algorithm with
// nearest quotients; each step at least halves the norm. Returns some
// associate of the gcd, which is all primitivity needs.
std::pair<mpz_class, mpz_class> zi_gcd(std::pair<mpz_class, mpz_class> a,
                                       std::pair<mpz_class, mpz_class> b) {
  while (b.first != 0 || b.second != 0) {
    mpz_class nb = b.first * b.first + b.second * b.second;
    mpz_class tre = a.first * b.first + a.second * b.second;
    mpz_class tim = a.second * b.first - a.first * b.second;
    mpz_class qre = round_div(tre, nb), qim = round_div(tim, nb);
    mpz_class rre = a.first - (qre * b.first - qim * b.second);
    mpz_class rim = a.second - (qre * b.second + qim * b.first);
    a = std::move(b);
    b = {std::move(rre), std::move(rim)};
  }
  return a;
}

// Scales p by a Gaussian rational so its coefficients become Gaussian integers
// whose common factor is a unit. Keeping Euclidean remainder sequences in this
// normal form bounds digit growth. The content must be taken in Z[i], not Z:
// a common non-real factor left behind compounds exponentially along remainder
// sequences whose leading coefficients are not real.
HermPoly integer_primitive(const HermPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.re.get_den().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.im.get_den().get_mpz_t());
  }
  std::pair<mpz_class, mpz_class> g{0, 0};
  for (const auto& [e, c] : p.terms()) {
    mpz_class re = c.re.get_num() * (den_lcm / c.re.get_den());
    mpz_class im = c.im.get_num() * (den_lcm / c.im.get_den());
    g = zi_gcd(std::move(g), {std::move(re), std::move(im)});
    if (g.first * g.first + g.second * g.second == 1) break;  // unit content
  }
  const Rational ng(g.first * g.first + g.second * g.second);
  const GaussianRational scale(Rational(den_lcm * g.first) / ng,
                               Rational(-den_lcm * g.second) / ng);
  return p.scal(scale);
}

// Pseudo-remainder in z of zbar-free polynomials: the remainder of
// lc(b)^(deg a - deg b + 1) * a by b, computed without rational division so
// integer coefficients stay integer.
HermPoly prem_univ(const HermPoly& a, const HermPoly& b) {
  std::uint32_t db = b.deg_z();
  GaussianRational blc = b.coeff(db, 0);
  HermPoly r = a;
  while (!r.is_zero() && r.deg_z() >= db) {
    std::uint32_t dr = r.deg_z();
    HermPoly t = HermPoly::monomial(r.coeff(dr, 0), dr - db, 0);
    r = r.scal(blc) - t * b;
  }
  return r;
}

// Exchanges the roles of z and zbar (exponents only; coefficients untouched).
HermPoly swap_vars(const HermPoly& p) {
  HermPoly r;
  for (const auto& [e, c] : p.terms()) r.add_term(Exp{e.zb, e.z}, c);
  return r;
}

// Substitutes zbar = t, leaving a polynomial in z alone.
HermPoly eval_zbar(const HermPoly& p, const Rational& t) {
  HermPoly r;
  std::uint32_t d = p.deg_zbar();
  std::vector<Rational> tpow(d + 1);
  tpow[0] = 1;
  for (std::uint32_t k = 1; k <= d; ++k) tpow[k] = tpow[k - 1] * t;
  for (const auto& [e, c] : p.terms()) r.add_term(Exp{e.z, 0}, c * GaussianRational(tpow[e.zb]));
  return r;
}

// Value of a zbar-free polynomial at z = t.
GaussianRational eval_univ(const HermPoly& p, const Rational& t) {
  GaussianRational acc;
  Rational tp = 1;
  std::uint32_t at = 0;
  for (const auto& [e, c] : p.terms()) {  // terms iterate in increasing z-degree
    while (at < e.z) { tp = tp * t; ++at; }
    acc = acc + c * GaussianRational(tp);
  }
  return acc;
}

// Coefficient of z^{deg_z(p)}, a polynomial in zbar alone.
HermPoly z_lead_layer(const HermPoly& p) {
  std::uint32_t d = p.deg_z();
  HermPoly r;
  for (const auto& [e, c] : p.terms())
    if (e.z == d) r.add_term(Exp{0, e.zb}, c);
  return r;
}

}  // namespace

HermPoly u_poly(const std::vector<Rational>& coeffs) {
  HermPoly p;
  for (std::uint32_t k = 0; k < coeffs.size(); ++k)
    p.add_term(Exp{k, k}, GaussianRational(coeffs[k]));
  return p;
}

std::optional<HermPoly> divide_exact(const HermPoly& P, const HermPoly& Q) {
  if (Q.is_zero()) fail(ErrorCode::DivisionByZero, "divide_exact by zero polynomial");
  HermPoly R = P, result;
  Exp ql = Q.leading_exp();
  GaussianRational qc = Q.leading_coeff();
  while (!R.is_zero()) {
    Exp e = R.leading_exp();
    if (e.z < ql.z || e.zb < ql.zb) return std::nullopt;
    HermPoly t = HermPoly::monomial(R.leading_coeff() / qc, e.z - ql.z, e.zb - ql.zb);
    result += t;
    R -= t * Q;
  }
  return result;
}

std::pair<std::uint32_t, HermPoly> factor_out(const HermPoly& P, const HermPoly& Q) {
  if (P.is_zero()) fail(ErrorCode::ZeroPolynomial, "factor_out of zero polynomial");
  if (Q.is_zero() || Q.total_degree() == 0)
    fail(ErrorCode::DivisionByZero, "factor_out by constant polynomial");
  std::uint32_t m = 0;
  HermPoly R = P;
  for (;;) {
    auto q = divide_exact(R, Q);
    if (!q) return {m, R};
    R = *q;
    ++m;
  }
}

// ---- modular univariate gcd over Z[i] ---------------------------------------
//
// The primitive remainder sequence below is robust but quadratic-with-big-
// integers; on the degree-100 numerators produced by curvature and tensor
// computations it dominates everything. The fast path computes the gcd modulo
// machine primes p = 3 (mod 4), where Z[i]/p is the field F_{p^2}, then lifts
// the monic rational coefficients by CRT + rational reconstruction and checks
// the result by exact division. Any failure falls back to the remainder
// sequence, so the fast path never changes results, only speed.

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return u64((u128(a) * b) % p); }
u64 addmod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p || s < a ? s - p : s; }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Element of F_{p^2} = F_p[i], valid for p = 3 (mod 4).
struct Fp2 {
  u64 re = 0, im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
};

Fp2 fp2_mul(Fp2 a, Fp2 b, u64 p) {
  return {submod(mulmod(a.re, b.re, p), mulmod(a.im, b.im, p), p),
          addmod(mulmod(a.re, b.im, p), mulmod(a.im, b.re, p), p)};
}

Fp2 fp2_sub(Fp2 a, Fp2 b, u64 p) { return {submod(a.re, b.re, p), submod(a.im, b.im, p)}; }

Fp2 fp2_inv(Fp2 a, u64 p) {
  const u64 n = addmod(mulmod(a.re, a.re, p), mulmod(a.im, a.im, p), p);
  const u64 ninv = powmod(n, p - 2, p);
  return {mulmod(a.re, ninv, p), mulmod(a.im == 0 ? 0 : p - a.im, ninv, p)};
}

// Fixed pool of 61-bit primes congruent to 3 mod 4, largest first.
const std::vector<u64>& prime_pool() {
  static const std::vector<u64> pool = [] {
    std::vector<u64> v;
    mpz_class c;
    for (u64 cand = (u64(1) << 61) - 1; v.size() < 128; cand -= 4) {
      c = static_cast<unsigned long>(cand);
      if (mpz_probab_prime_p(c.get_mpz_t(), 32)) v.push_back(cand);
    }
    return v;
  }();
  return pool;
}

// Dense coefficient image of a zbar-free integer-coefficient polynomial,
// lowest degree first. Empty result means p divides every coefficient pair.
std::vector<Fp2> poly_mod(const HermPoly& x, std::uint32_t deg, u64 p) {
  std::vector<Fp2> v(deg + 1);
  for (const auto& [e, c] : x.terms()) {
    u64 re = mpz_fdiv_ui(c.re.get_num().get_mpz_t(), p);
    u64 im = mpz_fdiv_ui(c.im.get_num().get_mpz_t(), p);
    v[e.z] = {re, im};
  }
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

// Monic gcd in F_{p^2}[z] by the Euclidean algorithm.
std::vector<Fp2> fp2_poly_gcd(std::vector<Fp2> a, std::vector<Fp2> b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const Fp2 lead_inv = fp2_inv(b.back(), p);
    while (a.size() >= b.size()) {
      const Fp2 q = fp2_mul(a.back(), lead_inv, p);
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[off + i] = fp2_sub(a[off + i], fp2_mul(q, b[i], p), p);
      while (!a.empty() && a.back().is_zero()) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const Fp2 lead_inv = fp2_inv(a.back(), p);
    for (Fp2& c : a) c = fp2_mul(c, lead_inv, p);
  }
  return a;
}

// Rational reconstruction: the unique n/d with |n|, d <= sqrt(M/2) congruent
// to r modulo M, if one exists.
std::optional<Rational> rat_reconstruct(const mpz_class& r, const mpz_class& M) {
  mpz_class bound = M / 2;
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  mpz_class r0 = M, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class n = r1, d = t1;
  if (d < 0) {
    d = -d;
    n = -n;
  }
  if (d > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// CRT state for one reconstructed Gaussian-rational coefficient.
struct CrtCoeff {
  mpz_class re, im;
};

// Modular gcd of primitive zbar-free polynomials; nullopt when the prime pool
// is exhausted without a verified answer (then the caller falls back).
std::optional<HermPoly> gcd_univ_modular(const HermPoly& x, const HermPoly& y) {
  const std::uint32_t dx = x.deg_z(), dy = y.deg_z();
  // Sentinel above any possible image size, so the first usable image always
  // initializes the CRT state.
  std::size_t min_deg = std::size_t(std::min(dx, dy)) + 2;
  std::vector<CrtCoeff> res;
  mpz_class modulus = 1;
  HermPoly last_candidate;
  bool have_candidate = false;
  for (const u64 p : prime_pool()) {
    const std::vector<Fp2> xa = poly_mod(x, dx, p), yb = poly_mod(y, dy, p);
    if (xa.size() != dx + 1 || yb.size() != dy + 1) continue;  // leading term vanished
    const std::vector<Fp2> g = fp2_poly_gcd(xa, yb, p);
    if (g.size() == 1) return HermPoly(1);  // coprime at a good prime
    if (g.size() > min_deg) continue;       // unlucky prime: inflated gcd
    if (g.size() < min_deg) {               // strictly better degree: start over
      min_deg = g.size();
      res.assign(g.size() - 1, CrtCoeff{});
      modulus = 1;
      have_candidate = false;
    }
    // Fold this image into the CRT state (the monic lead is implicit).
    const mpz_class p_mpz(static_cast<unsigned long>(p));
    const u64 m_mod_p = mpz_fdiv_ui(modulus.get_mpz_t(), p);
    const u64 m_inv = powmod(m_mod_p % p, p - 2, p);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      auto lift = [&](mpz_class& acc, u64 target) {
        const u64 cur = mpz_fdiv_ui(acc.get_mpz_t(), p);
        acc += modulus * mpz_class(static_cast<unsigned long>(
                             mulmod(submod(target, cur, p), m_inv, p)));
      };
      lift(res[i].re, g[i].re);
      lift(res[i].im, g[i].im);
    }
    modulus *= p_mpz;

    // Try to read the answer back; verify once it is stable across primes.
    HermPoly candidate;
    bool ok = true;
    for (std::size_t i = 0; ok && i + 1 < min_deg; ++i) {
      const auto re = rat_reconstruct(res[i].re, modulus);
      const auto im = rat_reconstruct(res[i].im, modulus);
      if (!re || !im) {
        ok = false;
        break;
      }
      if (*re != 0 || *im != 0)
        candidate.add_term(Exp{std::uint32_t(i), 0}, GaussianRational(*re, *im));
    }
    if (!ok) {
      have_candidate = false;
      continue;
    }
    candidate.add_term(Exp{std::uint32_t(min_deg - 1), 0}, GaussianRational(Rational(1)));
    if (have_candidate && candidate == last_candidate) {
      if (divide_exact(x, candidate) && divide_exact(y, candidate)) return candidate;
      have_candidate = false;  // stable but wrong: keep collecting primes
      continue;
    }
    last_candidate = std::move(candidate);
    have_candidate = true;
  }
  return std::nullopt;
}

HermPoly gcd_univariate(const HermPoly& a, const HermPoly& b) {
  if (a.deg_zbar() != 0 || b.deg_zbar() != 0)
    fail(ErrorCode::DimensionMismatch, "gcd_univariate on zbar-dependent input");
  HermPoly x = integer_primitive(a), y = integer_primitive(b);
  if (x.deg_z() < y.deg_z()) std::swap(x, y);
  if (!y.is_zero() && y.deg_z() >= 3) {
    if (auto g = gcd_univ_modular(x, y)) return *g;
  }
  while (!y.is_zero()) {
    HermPoly r = prem_univ(x, y);
    x = y;
    y = integer_primitive(r);
  }
  return monic(x);
}

// ---- modular bivariate gcd --------------------------------------------------
//
// Brown's algorithm: per machine prime, interpolate the gcd over F_{p^2} from
// univariate images along zbar, normalize, then lift across primes by CRT and
// rational reconstruction, verifying by exact division. All evaluation and
// interpolation happens in machine arithmetic; exhausting the prime pool falls
// back to the rational-point interpolation in gcd_bivariate.

Fp2 fp2_add(Fp2 a, Fp2 b, u64 p) { return {addmod(a.re, b.re, p), addmod(a.im, b.im, p)}; }

Fp2 fp2_neg(Fp2 a, u64 p) { return {a.re ? p - a.re : 0, a.im ? p - a.im : 0}; }

Fp2 fp2_poly_eval(const std::vector<Fp2>& c, Fp2 t, u64 p) {
  Fp2 acc{0, 0};
  for (std::size_t k = c.size(); k-- > 0;) acc = fp2_add(fp2_mul(acc, t, p), c[k], p);
  return acc;
}

void fp2_trim(std::vector<Fp2>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

// Exact division in F_{p^2}[x]; nullopt when the remainder is nonzero.
std::optional<std::vector<Fp2>> fp2_poly_div(std::vector<Fp2> a, const std::vector<Fp2>& b,
                                             u64 p) {
  if (a.empty()) return std::vector<Fp2>{};
  if (a.size() < b.size()) return std::nullopt;
  std::vector<Fp2> q(a.size() - b.size() + 1);
  const Fp2 lead_inv = fp2_inv(b.back(), p);
  for (std::size_t off = q.size(); off-- > 0;) {
    const Fp2 qc = fp2_mul(a[off + b.size() - 1], lead_inv, p);
    q[off] = qc;
    if (!qc.is_zero())
      for (std::size_t i = 0; i < b.size(); ++i)
        a[off + i] = fp2_sub(a[off + i], fp2_mul(qc, b[i], p), p);
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (!a[i].is_zero()) return std::nullopt;
  return q;
}

// Dense image of an integer-coefficient polynomial: row index is the z degree,
// column index the zbar degree.
using Fp2Grid = std::vector<std::vector<Fp2>>;

Fp2Grid grid_mod(const HermPoly& x, std::uint32_t dz, std::uint32_t dzb, u64 p) {
  Fp2Grid g(dz + 1, std::vector<Fp2>(dzb + 1));
  for (const auto& [e, c] : x.terms())
    g[e.z][e.zb] = {mpz_fdiv_ui(c.re.get_num().get_mpz_t(), p),
                    mpz_fdiv_ui(c.im.get_num().get_mpz_t(), p)};
  return g;
}

std::uint32_t grid_deg_zbar(const Fp2Grid& g) {
  std::size_t d = 0;
  for (const auto& row : g)
    for (std::size_t k = row.size(); k-- > 0;)
      if (!row[k].is_zero()) {
        d = std::max(d, k);
        break;
      }
  return std::uint32_t(d);
}

// The z-polynomial at zbar = t, dense and trimmed.
std::vector<Fp2> grid_at(const Fp2Grid& g, Fp2 t, u64 p) {
  std::vector<Fp2> r(g.size());
  for (std::size_t iz = 0; iz < g.size(); ++iz) r[iz] = fp2_poly_eval(g[iz], t, p);
  fp2_trim(r);
  return r;
}

// One prime's normalized gcd image: 0 = ok, 1 = inputs coprime, 2 = bad prime.
struct BivImage {
  Fp2Grid g;
  std::uint32_t dz = 0, dzb = 0;
};

int biv_image(const Fp2Grid& X, const Fp2Grid& Y, u64 p, BivImage& out) {
  std::vector<Fp2> lx = X.back(), ly = Y.back();
  fp2_trim(lx);
  fp2_trim(ly);
  if (lx.empty() || ly.empty()) return 2;  // a leading coefficient vanished
  const std::vector<Fp2> gam = fp2_poly_gcd(lx, ly, p);
  const std::uint32_t budget =
      std::min(grid_deg_zbar(X), grid_deg_zbar(Y)) + std::uint32_t(gam.size() - 1) + 1;

  std::size_t min_dz = std::size_t(-1);
  Fp2Grid G;
  std::vector<Fp2> basis{{1, 0}};
  std::uint32_t got = 0;
  for (u64 tv = 0; tv < u64(8) * budget + 256 && got < budget; ++tv) {
    const Fp2 t{tv % p, 0};
    if (fp2_poly_eval(lx, t, p).is_zero() || fp2_poly_eval(ly, t, p).is_zero()) continue;
    const std::vector<Fp2> gt = fp2_poly_gcd(grid_at(X, t, p), grid_at(Y, t, p), p);
    if (gt.size() == 1) return 1;  // coprime at a good point
    const std::size_t d = gt.size() - 1;
    if (d > min_dz) continue;  // inflated image: unlucky point
    if (d < min_dz) {
      min_dz = d;
      G.assign(d + 1, {});
      basis = {{1, 0}};
      got = 0;
    }
    // Newton step: G += basis * (gamma(t) * gt - G(t)) / basis(t).
    const Fp2 gamt = fp2_poly_eval(gam, t, p);
    const Fp2 bt_inv = fp2_inv(fp2_poly_eval(basis, t, p), p);
    for (std::size_t iz = 0; iz <= min_dz; ++iz) {
      const Fp2 cur = fp2_poly_eval(G[iz], t, p);
      const Fp2 diff = fp2_mul(fp2_sub(fp2_mul(gt[iz], gamt, p), cur, p), bt_inv, p);
      if (G[iz].size() < basis.size()) G[iz].resize(basis.size(), Fp2{});
      if (!diff.is_zero())
        for (std::size_t k = 0; k < basis.size(); ++k)
          G[iz][k] = fp2_add(G[iz][k], fp2_mul(diff, basis[k], p), p);
    }
    std::vector<Fp2> nb(basis.size() + 1);
    const Fp2 mt = fp2_neg(t, p);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      nb[k + 1] = fp2_add(nb[k + 1], basis[k], p);
      nb[k] = fp2_add(nb[k], fp2_mul(basis[k], mt, p), p);
    }
    basis = std::move(nb);
    ++got;
  }
  if (got < budget) return 2;  // not enough usable points at this prime

  // Remove the zbar-content the gamma scaling introduced.
  std::vector<Fp2> content;
  for (auto& row : G) {
    std::vector<Fp2> r = row;
    fp2_trim(r);
    if (!r.empty()) content = fp2_poly_gcd(std::move(content), std::move(r), p);
  }
  if (content.size() > 1) {
    for (auto& row : G) {
      std::vector<Fp2> r = row;
      fp2_trim(r);
      if (r.empty()) {
        row.clear();
        continue;
      }
      auto q = fp2_poly_div(std::move(r), content, p);
      if (!q) return 2;
      row = std::move(*q);
    }
  }
  // Normalize: unit coefficient at the top zbar slot of the top z row.
  std::vector<Fp2> top = G.back();
  fp2_trim(top);
  if (top.empty()) return 2;
  const Fp2 scale = fp2_inv(top.back(), p);
  for (auto& row : G)
    for (Fp2& c : row) c = fp2_mul(c, scale, p);
  out.g = std::move(G);
  out.dz = std::uint32_t(min_dz);
  out.dzb = grid_deg_zbar(out.g);
  return 0;
}

// Modular gcd of doubly primitive integer-coefficient bivariate polynomials;
// nullopt when the prime pool is exhausted without a verified answer.
std::optional<HermPoly> gcd_biv_modular(const HermPoly& X, const HermPoly& Y) {
  const std::uint32_t dzx = X.deg_z(), dzbx = X.deg_zbar();
  const std::uint32_t dzy = Y.deg_z(), dzby = Y.deg_zbar();
  std::size_t cur_dz = std::size_t(-1), cur_dzb = std::size_t(-1);
  std::vector<std::vector<CrtCoeff>> res;
  mpz_class modulus = 1;
  HermPoly last_candidate;
  bool have_candidate = false;
  for (const u64 p : prime_pool()) {
    BivImage img;
    const int status = biv_image(grid_mod(X, dzx, dzbx, p), grid_mod(Y, dzy, dzby, p), p, img);
    if (status == 2) continue;
    if (status == 1) return HermPoly(1);
    const bool smaller = (img.dz <= cur_dz && img.dzb <= cur_dzb) &&
                         (img.dz < cur_dz || img.dzb < cur_dzb);
    if (smaller) {
      cur_dz = img.dz;
      cur_dzb = img.dzb;
      res.assign(cur_dz + 1, std::vector<CrtCoeff>(cur_dzb + 1));
      modulus = 1;
      have_candidate = false;
    } else if (img.dz != cur_dz || img.dzb != cur_dzb) {
      continue;  // inflated or incomparable signature: unlucky prime
    }
    const u64 m_inv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
    for (std::size_t iz = 0; iz <= cur_dz; ++iz)
      for (std::size_t k = 0; k <= cur_dzb; ++k) {
        const Fp2 v = k < img.g[iz].size() ? img.g[iz][k] : Fp2{};
        auto lift = [&](mpz_class& acc, u64 target) {
          const u64 cur = mpz_fdiv_ui(acc.get_mpz_t(), p);
          acc += modulus * mpz_class(static_cast<unsigned long>(
                               mulmod(submod(target, cur, p), m_inv, p)));
        };
        lift(res[iz][k].re, v.re);
        lift(res[iz][k].im, v.im);
      }
    modulus *= mpz_class(static_cast<unsigned long>(p));

    HermPoly candidate;
    bool ok = true;
    for (std::size_t iz = 0; ok && iz <= cur_dz; ++iz)
      for (std::size_t k = 0; k <= cur_dzb; ++k) {
        const auto re = rat_reconstruct(res[iz][k].re, modulus);
        const auto im = rat_reconstruct(res[iz][k].im, modulus);
        if (!re || !im) {
          ok = false;
          break;
        }
        if (*re != 0 || *im != 0)
          candidate.add_term(Exp{std::uint32_t(iz), std::uint32_t(k)},
                             GaussianRational(*re, *im));
      }
    if (!ok) {
      have_candidate = false;
      continue;
    }
    if (have_candidate && candidate == last_candidate) {
      if (divide_exact(X, candidate) && divide_exact(Y, candidate)) return candidate;
      have_candidate = false;
      continue;
    }
    last_candidate = std::move(candidate);
    have_candidate = true;
  }
  return std::nullopt;
}

HermPoly content_z(const HermPoly& p) {
  HermPoly g;
  std::uint32_t d = p.deg_zbar();
  for (std::uint32_t k = 0; k <= d; ++k) {
    HermPoly layer;
    for (auto& [e, c] : p.terms())
      if (e.zb == k) layer.add_term(Exp{e.z, 0}, c);
    if (!layer.is_zero()) g = gcd_univariate(g, layer);
  }
  return g;
}

HermPoly gcd_bivariate(const HermPoly& a, const HermPoly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  std::uint32_t da = a.deg_zbar(), db = b.deg_zbar();
  if (da == 0 && db == 0) return gcd_univariate(a, b);
  if (da == 0) return gcd_univariate(a, content_z(b));
  if (db == 0) return gcd_univariate(content_z(a), b);

  // Split off the single-variable content in both directions, so that every
  // irreducible factor of the remaining gcd depends on both z and zbar.
  HermPoly ca_z = content_z(a), cb_z = content_z(b);
  HermPoly pa = *divide_exact(a, ca_z), pb = *divide_exact(b, cb_z);
  HermPoly ca_zb = swap_vars(content_z(swap_vars(pa)));
  HermPoly cb_zb = swap_vars(content_z(swap_vars(pb)));
  pa = *divide_exact(pa, ca_zb);
  pb = *divide_exact(pb, cb_zb);
  HermPoly cg = gcd_univariate(ca_z, cb_z) *
                swap_vars(gcd_univariate(swap_vars(ca_zb), swap_vars(cb_zb)));
  if (pa.total_degree() == 0 || pb.total_degree() == 0) return monic(cg);

  // Modular gcd of the doubly primitive parts: evaluate zbar at rational
  // points, gcd univariately in z, and interpolate back in zbar. The leading
  // z-layer of the gcd divides gamma, so scaling each image to gamma(t) makes
  // the images consistent across evaluation points.
  HermPoly lead_a = swap_vars(z_lead_layer(pa)), lead_b = swap_vars(z_lead_layer(pb));
  HermPoly gamma = gcd_univariate(lead_a, lead_b);  // zbar-poly in z-representation
  std::uint32_t budget = std::min(pa.deg_zbar(), pb.deg_zbar()) + gamma.deg_z() + 1;
  std::vector<Rational> points;
  std::vector<HermPoly> images;  // gamma(t) * monic gcd of the evaluations
  std::uint32_t min_deg = 0;
  for (long k = 0; k < 8 * long(budget) + 256; ++k) {
    Rational t(k % 2 == 0 ? k / 2 : -(k / 2 + 1));  // 0, -1, 1, -2, 2, ...
    if (eval_univ(lead_a, t).is_zero() || eval_univ(lead_b, t).is_zero())
      continue;  // z-degree drops under evaluation: unlucky point
    HermPoly gt = gcd_univariate(eval_zbar(pa, t), eval_zbar(pb, t));
    std::uint32_t d = gt.deg_z();
    if (d == 0) return monic(cg);  // coprime at a good point: coprime overall
    if (points.empty() || d < min_deg) {
      points.clear();
      images.clear();
      min_deg = d;
    } else if (d > min_deg) {
      continue;  // inflated gcd: unlucky point
    }
    points.push_back(t);
    images.push_back(gt.scal(eval_univ(gamma, t)));
    if (points.size() < budget) continue;

    // Lagrange interpolation in zbar through the collected images.
    HermPoly G;
    for (std::size_t i = 0; i < points.size(); ++i) {
      HermPoly basis(1);
      GaussianRational denom(1);
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        HermPoly lin;
        lin.add_term(Exp{0, 1}, GaussianRational(1));
        lin.add_term(Exp{0, 0}, GaussianRational(-points[j]));
        basis = basis * lin;
        denom = denom * GaussianRational(points[i] - points[j]);
      }
      G += (images[i] * basis).scal(denom.inverse());
    }
    G = *divide_exact(G, swap_vars(content_z(swap_vars(G))));
    if (divide_exact(pa, G) && divide_exact(pb, G)) return monic(cg * G);
    // Every collected point was unlucky (vanishing probability): drop the
    // batch and keep sampling.
    points.clear();
    images.clear();
  }
  fail(ErrorCode::NonTerminating, "modular bivariate gcd failed to stabilize");
}

std::optional<std::pair<Rational, HermPoly>> norm_square_factor(const HermPoly& P) {
  if (P.is_zero()) fail(ErrorCode::ZeroPolynomial, "norm_square_factor of zero");
  if (!P.is_real()) fail(ErrorCode::NotReal, "norm_square_factor of non-real polynomial");
  std::uint32_t d = P.deg_z();  // reality forces deg_z == deg_zbar
  auto C = [&](std::uint32_t a, std::uint32_t b) { return P.coeff(a, b); };

  // rank-1 PSD Hermitian matrices have a positive diagonal pivot
  std::optional<std::uint32_t> pivot;
  for (std::uint32_t a = 0; a <= d && !pivot; ++a)
    if (!C(a, a).is_zero()) pivot = a;
  if (!pivot) return std::nullopt;
  GaussianRational piv = C(*pivot, *pivot);
  if (!piv.is_real() || !(piv.re > 0)) return std::nullopt;

  for (std::uint32_t a = 0; a <= d; ++a)
    for (std::uint32_t b = 0; b <= d; ++b)
      if (C(a, b) * piv != C(a, *pivot) * C(*pivot, b)) return std::nullopt;

  HermPoly w;
  for (std::uint32_t a = 0; a <= d; ++a) w.add_term(Exp{a, 0}, C(a, *pivot));
  GaussianRational lead = w.leading_coeff();
  HermPoly h = w.scal(lead.inverse());
  Rational c = lead.norm_sq() / piv.re;
  if (P != (GaussianRational(c) * (h * h.conj_swap()))) return std::nullopt;
  return std::make_pair(c, h);
}

void reduce_vector(std::vector<HermPoly>& v) {
  HermPoly g;
  for (auto& p : v) g = gcd_bivariate(g, p);
  if (g.is_zero()) return;
  for (auto& p : v) p = *divide_exact(p, g);
  for (auto& p : v)
    if (!p.is_zero()) {
      GaussianRational s = p.leading_coeff().inverse();
      for (auto& q : v) q = q.scal(s);
      return;
    }
}

}  // namespace flagcurve
