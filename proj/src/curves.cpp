#include "flagcurve/curves.hpp"

namespace flagcurve {

namespace {

// Rank of a constant matrix over Q(i); used only by the fullness check.
std::uint32_t rank_const(std::vector<std::vector<GaussianRational>> m) {
  std::uint32_t r = 0;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    GaussianRational inv = m[r][c].inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      GaussianRational f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

HolCurve make_curve(std::uint32_t n, std::vector<PolyVector> frame, Weights weights,
                    bool compact) {
  if (n == 0 || frame.empty())
    fail(ErrorCode::DimensionMismatch, "curve needs positive ambient dim and a frame");
  if (weights.empty()) weights = unit_weights(n);
  if (weights.size() != n)
    fail(ErrorCode::WeightCountMismatch, "weight count does not match ambient dim");
  for (auto& w : weights)
    if (w <= 0) fail(ErrorCode::ZeroMetric, "ambient weights must be positive");
  for (auto& v : frame) {
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "frame vector of wrong dim");
    bool all_zero = true;
    for (auto& e : v) {
      if (!e.is_holomorphic())
        fail(ErrorCode::NonHolomorphic, "curve frame entries must be z-only");
      all_zero = all_zero && e.is_zero();
    }
    if (all_zero) fail(ErrorCode::ZeroPolynomial, "zero frame vector");
  }
  if (rank_poly(frame) != frame.size())
    fail(ErrorCode::SingularGram, "frame generically dependent");
  return HolCurve{n, std::move(frame), std::move(weights), compact};
}

bool is_full(const HolCurve& c) {
  std::vector<std::vector<GaussianRational>> rows;
  for (auto& v : c.frame) {
    std::uint32_t d = 0;
    for (auto& e : v) d = std::max(d, e.deg_z());
    for (std::uint32_t m = 0; m <= d; ++m) {
      std::vector<GaussianRational> row(c.n);
      bool nonzero = false;
      for (std::uint32_t i = 0; i < c.n; ++i) {
        row[i] = v[i].coeff(m, 0);
        nonzero = nonzero || !row[i].is_zero();
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  return rank_const(std::move(rows)) == c.n;
}

std::vector<std::uint32_t> HarmonicSequence::ranks() const {
  std::vector<std::uint32_t> r;
  for (auto& l : levels) r.push_back(l.rank());
  return r;
}

Subbundle gauss_transform(const Subbundle& psi, const Weights& w) {
  std::uint32_t k = psi.rank();
  Subbundle next{psi.n, psi.index + 1, {}};
  if (k == 0) return next;

  std::vector<std::vector<HermPoly>> gram(k, std::vector<HermPoly>(k));
  for (std::uint32_t r = 0; r < k; ++r)
    for (std::uint32_t t = 0; t < k; ++t)
      gram[r][t] = hermitian_pairing(psi.frame[t], psi.frame[r], w);
  HermPoly det = det_poly(gram);
  if (det.is_zero())
    fail(ErrorCode::SingularGram, "frame degenerate everywhere in gauss_transform");

  std::vector<std::vector<HermPoly>> images;
  for (std::uint32_t s = 0; s < k; ++s) {
    PolyVector v(psi.n);
    for (std::uint32_t i = 0; i < psi.n; ++i) v[i] = psi.frame[s][i].diff_z();

    std::vector<HermPoly> rhs(k);
    for (std::uint32_t r = 0; r < k; ++r) rhs[r] = hermitian_pairing(v, psi.frame[r], w);

    // Cramer numerators for the projection coefficients; common denominator
    // det stays multiplied through so the image is polynomial.
    PolyVector g(psi.n);
    for (std::uint32_t i = 0; i < psi.n; ++i) g[i] = det * v[i];
    for (std::uint32_t t = 0; t < k; ++t) {
      auto m = gram;
      for (std::uint32_t r = 0; r < k; ++r) m[r][t] = rhs[r];
      HermPoly ct = det_poly(std::move(m));
      for (std::uint32_t i = 0; i < psi.n; ++i) g[i] -= ct * psi.frame[t][i];
    }
    reduce_vector(g);
    bool zero = true;
    for (auto& e : g) zero = zero && e.is_zero();
    if (!zero) images.push_back(std::move(g));
  }
  next.frame = row_echelon_poly(std::move(images));
  return next;
}

HarmonicSequence harmonic_sequence(const HolCurve& c) {
  HarmonicSequence seq;
  seq.levels.push_back(Subbundle{c.n, 0, c.frame});
  for (;;) {
    Subbundle next = gauss_transform(seq.levels.back(), c.weights);
    if (next.rank() == 0) break;
    seq.levels.push_back(std::move(next));
    if (seq.levels.size() > c.n)
      fail(ErrorCode::NonTerminating, "harmonic sequence longer than ambient dim");
  }
  for (std::size_t a = 0; a < seq.levels.size(); ++a)
    for (std::size_t b = a + 1; b < seq.levels.size(); ++b)
      for (auto& f : seq.levels[a].frame)
        for (auto& g : seq.levels[b].frame)
          if (!hermitian_pairing(f, g, c.weights).is_zero())
            throw std::logic_error("harmonic sequence lost mutual orthogonality");
  return seq;
}

HolCurve osculating_section(const HolCurve& c, std::uint32_t j, std::uint32_t expected_rank) {
  std::vector<PolyVector> chosen;
  std::uint32_t rank = 0;
  for (std::uint32_t order = 0; order <= j; ++order) {
    for (auto& f : c.frame) {
      PolyVector v = f;
      for (std::uint32_t m = 0; m < order; ++m)
        for (auto& e : v) e = e.diff_z();
      chosen.push_back(std::move(v));
      std::uint32_t r = rank_poly(chosen);
      if (r > rank)
        rank = r;
      else
        chosen.pop_back();
    }
  }
  if (rank != expected_rank)
    fail(ErrorCode::RankDeficient, "osculating space of order " + std::to_string(j) +
                                       " has rank " + std::to_string(rank) + ", expected " +
                                       std::to_string(expected_rank));

  PolyVector section = wedge(chosen, c.n);
  for (auto& p : section)
    if (!p.is_holomorphic())
      throw std::logic_error("osculating Plucker section not holomorphic");
  HermPoly g;
  for (auto& p : section) g = gcd_univariate(g, p);
  if (g.is_zero()) fail(ErrorCode::RankDeficient, "zero osculating section");
  for (auto& p : section) p = *divide_exact(p, g);

  HolCurve out;
  out.n = std::uint32_t(section.size());
  out.frame = {std::move(section)};
  out.weights = plucker_weights(c.weights, rank);
  out.compact = c.compact;
  return out;
}

PrimitiveLift primitive_lift(const HolCurve& c) {
  PrimitiveLift lift;
  lift.curve = c;
  lift.seq = harmonic_sequence(c);
  std::uint32_t total = 0;
  for (auto r : lift.seq.ranks()) total += r;
  if (total != c.n)
    fail(ErrorCode::NotAFlag, "harmonic sequence spans rank " + std::to_string(total) +
                                  " of ambient " + std::to_string(c.n) +
                                  " (curve not full)");
  std::uint32_t p = lift.seq.p();
  std::uint32_t cum = 0;
  for (std::uint32_t j = 0; j < p; ++j) {
    cum += lift.seq.levels[j].rank();
    HolCurve s = osculating_section(c, j, cum);
    HermPoly b = norm_square(s.frame[0], s.weights);
    RationalFn g = laplace_log(b);
    if (g.is_zero())
      fail(ErrorCode::NotImmersion, "gamma_" + std::to_string(j) + " vanishes identically");
    lift.sigma.push_back(std::move(s));
    lift.beta.push_back(std::move(b));
    lift.gamma.push_back(std::move(g));
  }
  return lift;
}

const HolCurve& osculating_plucker(const PrimitiveLift& lift, std::uint32_t j) {
  if (j >= lift.sigma.size())
    fail(ErrorCode::IndexOutOfRange, "osculating level " + std::to_string(j));
  return lift.sigma[j];
}

std::vector<RationalFn> norm_ratio_gammas(const HolCurve& c) {
  if (c.rank() != 1)
    fail(ErrorCode::DimensionMismatch, "norm-ratio route needs a rank-1 curve");
  using RatVec = std::vector<RationalFn>;
  RatVec f;
  for (auto& e : c.frame[0]) f.push_back(RationalFn(e));

  auto pair_w = [&](const RatVec& a, const RatVec& b) {
    RationalFn acc;
    for (std::size_t i = 0; i < a.size(); ++i)
      acc += (a[i] * b[i].conj_swap()).scal(GaussianRational(c.weights[i]));
    return acc;
  };
  auto dz = [](const RatVec& a) {
    RatVec d;
    for (auto& e : a) {
      // quotient rule on the reduced representation
      HermPoly n = e.num(), dn = e.den();
      d.push_back(RationalFn(n.diff_z() * dn - n * dn.diff_z(), dn * dn));
    }
    return d;
  };

  std::vector<RationalFn> gammas;
  RationalFn prev_norm = pair_w(f, f);
  for (std::uint32_t guard = 0; guard <= c.n; ++guard) {
    RatVec df = dz(f);
    RationalFn coef = pair_w(df, f) / prev_norm;
    RatVec next(f.size());
    bool zero = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      next[i] = df[i] - coef * f[i];
      zero = zero && next[i].is_zero();
    }
    if (zero) break;
    RationalFn norm = pair_w(next, next);
    gammas.push_back(norm / prev_norm);
    prev_norm = norm;
    f = std::move(next);
  }
  return gammas;
}

}  // namespace flagcurve
