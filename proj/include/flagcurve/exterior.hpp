#pragma once

#include <vector>

#include "flagcurve/hermpoly.hpp"

namespace flagcurve {

using PolyVector = std::vector<HermPoly>;
using Weights = std::vector<Rational>;

// Sorted k-subsets of {0..n-1} in lexicographic order; position in this list
// is the Plucker coordinate index.
std::vector<std::vector<std::uint32_t>> subsets_lex(std::uint32_t n, std::uint32_t k);

Weights unit_weights(std::size_t n);

// Product of the selected coordinate weights per lex subset: the diagonal
// metric induced on the k-th exterior power.
Weights plucker_weights(const Weights& w, std::uint32_t k);

// <v, u> = sum_i w_i v_i conj(u_i). Conjugate-symmetric.
HermPoly hermitian_pairing(const PolyVector& v, const PolyVector& u, const Weights& w);
HermPoly hermitian_pairing(const PolyVector& v, const PolyVector& u);

HermPoly norm_square(const PolyVector& v, const Weights& w);
HermPoly norm_square(const PolyVector& v);

// Entry at subset S is the k x k minor on columns S, rows in the given order.
// Alternating; zero iff the inputs are generically dependent.
PolyVector wedge(const std::vector<PolyVector>& vectors, std::uint32_t n);

// Determinant by fraction-free (Bareiss) elimination; exact over Q(i)[z,zbar].
HermPoly det_poly(std::vector<std::vector<HermPoly>> m);

// Rank over the rational-function field (NOT over constants).
std::uint32_t rank_poly(std::vector<std::vector<HermPoly>> rows);

// Fraction-free row echelon; returns the nonzero rows, each content-reduced.
// Row span over the function field is preserved.
std::vector<std::vector<HermPoly>> row_echelon_poly(std::vector<std::vector<HermPoly>> rows);

}  // namespace flagcurve
