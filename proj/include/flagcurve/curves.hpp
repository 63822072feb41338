#pragma once

#include "flagcurve/exterior.hpp"
#include "flagcurve/rationalfn.hpp"

namespace flagcurve {

// Holomorphic curve data: k frame vectors with z-only polynomial entries,
// a diagonal positive metric on the ambient space (all ones = Fubini-Study),
// and the domain flag (compact = defined on all of S^2).
struct HolCurve {
  std::uint32_t n = 0;
  std::vector<PolyVector> frame;
  Weights weights;
  bool compact = true;

  std::uint32_t rank() const { return std::uint32_t(frame.size()); }
};

// Validates and assembles: entries holomorphic, dims consistent, weights
// positive (size n), frame generically independent over the function field.
HolCurve make_curve(std::uint32_t n, std::vector<PolyVector> frame,
                    Weights weights = {}, bool compact = true);

// Fullness: the stacked coefficient matrix of all frame entries has rank n
// over Q(i) (no fixed proper subspace contains the curve).
bool is_full(const HolCurve& c);

// Generic fiber of one harmonic-sequence term, spanned by polynomial
// representatives (denominators cleared, content removed).
struct Subbundle {
  std::uint32_t n = 0;
  std::uint32_t index = 0;
  std::vector<PolyVector> frame;

  std::uint32_t rank() const { return std::uint32_t(frame.size()); }
};

struct HarmonicSequence {
  std::vector<Subbundle> levels;  // psi_0 .. psi_p, every rank positive

  std::uint32_t p() const { return std::uint32_t(levels.size()) - 1; }
  std::vector<std::uint32_t> ranks() const;
};

// Image of A' on psi: for each frame vector f, d f/dz minus its orthogonal
// projection onto psi (Gram solve over the function field via Cramer, then
// denominators cleared), row-reduced to a spanning set. Empty frame = rank 0,
// the sequence has terminated.
Subbundle gauss_transform(const Subbundle& psi, const Weights& w);

// Iterates gauss_transform until rank 0 and checks mutual orthogonality of
// all produced terms. NonTerminating guards a level count beyond n.
HarmonicSequence harmonic_sequence(const HolCurve& c);

struct PrimitiveLift {
  HolCurve curve;
  HarmonicSequence seq;
  // Per level j = 0..p-1: holomorphic Plucker section of psi_0 + ... + psi_j,
  // its norm square, and gamma_j = laplace_log(beta_j).
  std::vector<HolCurve> sigma;
  std::vector<HermPoly> beta;
  std::vector<RationalFn> gamma;

  std::uint32_t p() const { return seq.p(); }
};

// Assembles the lift into the flag manifold F_{k_0,...,k_p}; requires the
// sequence to exhaust the ambient space (sum of ranks = n) and every gamma_j
// to be nonzero. Caches sigma/beta/gamma eagerly.
PrimitiveLift primitive_lift(const HolCurve& c);

// Cached accessor; j in 0..p-1.
const HolCurve& osculating_plucker(const PrimitiveLift& lift, std::uint32_t j);

// Independent construction: greedy maximal generically-independent subset of
// frame vectors and their z-derivatives up to order j (ordered by derivative
// order, then frame index), wedged, univariate content removed. expected_rank
// is k_0+...+k_j; mismatch is RankDeficient.
HolCurve osculating_section(const HolCurve& c, std::uint32_t j, std::uint32_t expected_rank);

// gamma_j via the unnormalized Gauss chain norm ratios |f_{j+1}|^2/|f_j|^2.
// Rank-1 curves only; cross-check route against laplace_log(beta_j).
std::vector<RationalFn> norm_ratio_gammas(const HolCurve& c);

}  // namespace flagcurve
