#include "flagcurve/exterior.hpp"

namespace flagcurve {

std::vector<std::vector<std::uint32_t>> subsets_lex(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k > n) return out;
  std::vector<std::uint32_t> s(k);
  for (std::uint32_t i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    out.push_back(s);
    // advance to next combination
    std::int64_t i = std::int64_t(k) - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (std::uint32_t j = std::uint32_t(i) + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

Weights unit_weights(std::size_t n) { return Weights(n, Rational(1)); }

Weights plucker_weights(const Weights& w, std::uint32_t k) {
  Weights out;
  for (auto& s : subsets_lex(std::uint32_t(w.size()), k)) {
    Rational p(1);
    for (auto i : s) p *= w[i];
    out.push_back(p);
  }
  return out;
}

HermPoly hermitian_pairing(const PolyVector& v, const PolyVector& u, const Weights& w) {
  if (v.size() != u.size())
    fail(ErrorCode::DimensionMismatch, "pairing of vectors with different dims");
  if (w.size() != v.size())
    fail(ErrorCode::WeightCountMismatch, "weight count does not match dimension");
  HermPoly acc;
  for (std::size_t i = 0; i < v.size(); ++i)
    acc += (GaussianRational(w[i]) * (v[i] * u[i].conj_swap()));
  return acc;
}

HermPoly hermitian_pairing(const PolyVector& v, const PolyVector& u) {
  return hermitian_pairing(v, u, unit_weights(v.size()));
}

HermPoly norm_square(const PolyVector& v, const Weights& w) {
  return hermitian_pairing(v, v, w);
}
HermPoly norm_square(const PolyVector& v) { return hermitian_pairing(v, v); }

HermPoly det_poly(std::vector<std::vector<HermPoly>> m) {
  std::size_t k = m.size();
  if (k == 0) return HermPoly(1);
  for (auto& row : m)
    if (row.size() != k) fail(ErrorCode::DimensionMismatch, "det of non-square matrix");
  bool neg = false;
  HermPoly prev(1);
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (m[p][p].is_zero()) {
      std::size_t r = p + 1;
      while (r < k && m[r][p].is_zero()) ++r;
      if (r == k) return HermPoly();
      std::swap(m[p], m[r]);
      neg = !neg;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j)
        m[i][j] = *divide_exact(m[p][p] * m[i][j] - m[i][p] * m[p][j], prev);
      m[i][p] = HermPoly();
    }
    prev = m[p][p];
  }
  return neg ? -m[k - 1][k - 1] : m[k - 1][k - 1];
}

namespace {

// Shared fraction-free elimination. Entries after each step are minors of the
// original matrix, so the divisions are exact (Sylvester identity).
std::vector<std::vector<HermPoly>> echelon(std::vector<std::vector<HermPoly>> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  HermPoly prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[r], m[pr]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = *divide_exact(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev);
      m[i][c] = HermPoly();
    }
    prev = m[r][c];
    ++r;
  }
  m.resize(r);
  return m;
}

}  // namespace

std::uint32_t rank_poly(std::vector<std::vector<HermPoly>> rows) {
  return std::uint32_t(echelon(std::move(rows)).size());
}

std::vector<std::vector<HermPoly>> row_echelon_poly(std::vector<std::vector<HermPoly>> rows) {
  auto m = echelon(std::move(rows));
  for (auto& row : m) reduce_vector(row);
  return m;
}

PolyVector wedge(const std::vector<PolyVector>& vectors, std::uint32_t n) {
  std::uint32_t k = std::uint32_t(vectors.size());
  if (k < 1 || k > n) fail(ErrorCode::DimensionMismatch, "wedge arity out of range");
  for (auto& v : vectors)
    if (v.size() != n) fail(ErrorCode::DimensionMismatch, "wedge vector of wrong dim");
  PolyVector out;
  for (auto& s : subsets_lex(n, k)) {
    std::vector<std::vector<HermPoly>> minor(k, std::vector<HermPoly>(k));
    for (std::uint32_t r = 0; r < k; ++r)
      for (std::uint32_t c = 0; c < k; ++c) minor[r][c] = vectors[r][s[c]];
    out.push_back(det_poly(std::move(minor)));
  }
  return out;
}

}  // namespace flagcurve
