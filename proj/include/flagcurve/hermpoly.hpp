#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flagcurve/numbers.hpp"

namespace flagcurve {

// Monomial z^z_exp * zbar^zb_exp.
struct Exp {
  std::uint32_t z = 0, zb = 0;
  friend bool operator==(Exp a, Exp b) { return a.z == b.z && a.zb == b.zb; }
};

// Graded lex: total degree first, then z-exponent. Map iteration order is
// ascending, so rbegin() is the leading term.
struct ExpLess {
  bool operator()(Exp a, Exp b) const {
    std::uint64_t ta = std::uint64_t(a.z) + a.zb, tb = std::uint64_t(b.z) + b.zb;
    if (ta != tb) return ta < tb;
    return a.z < b.z;
  }
};

inline constexpr std::uint32_t kMaxExp = 1u << 16;

namespace detail {
inline bool coeff_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }
inline GaussianRational coeff_conj(const GaussianRational& c) { return c.conj(); }
inline std::complex<double> coeff_conj(const std::complex<double>& c) { return std::conj(c); }
inline std::complex<double> coeff_to_complex(const GaussianRational& c) { return c.to_complex(); }
inline std::complex<double> coeff_to_complex(const std::complex<double>& c) { return c; }
}  // namespace detail

// Sparse polynomial in z and zbar. Hermitian-symmetric instances (P == conj_swap(P))
// represent real-valued functions on the plane.
template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using Terms = std::map<Exp, C, ExpLess>;

  BasicPoly() = default;
  explicit BasicPoly(const C& c) {
    if (!detail::coeff_zero(c)) terms_[Exp{0, 0}] = c;
  }
  BasicPoly(long v) : BasicPoly(C(v)) {}

  static BasicPoly z() { return monomial(C(1), 1, 0); }
  static BasicPoly zbar() { return monomial(C(1), 0, 1); }
  static BasicPoly monomial(const C& c, std::uint32_t a, std::uint32_t b) {
    check_exp(a, b);
    BasicPoly p;
    if (!detail::coeff_zero(c)) p.terms_[Exp{a, b}] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  C coeff(std::uint32_t a, std::uint32_t b) const {
    auto it = terms_.find(Exp{a, b});
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(Exp e, const C& c) {
    check_exp(e.z, e.zb);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!detail::coeff_zero(c)) terms_[e] = c;
    } else {
      it->second = it->second + c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }

  Exp leading_exp() const {
    if (is_zero()) fail(ErrorCode::ZeroPolynomial, "leading term of zero polynomial");
    return terms_.rbegin()->first;
  }
  C leading_coeff() const {
    if (is_zero()) fail(ErrorCode::ZeroPolynomial, "leading term of zero polynomial");
    return terms_.rbegin()->second;
  }

  std::uint32_t deg_z() const {
    std::uint32_t d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e.z);
    return d;
  }
  std::uint32_t deg_zbar() const {
    std::uint32_t d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, e.zb);
    return d;
  }
  std::uint64_t total_degree() const {
    if (is_zero()) return 0;
    Exp e = terms_.rbegin()->first;
    return std::uint64_t(e.z) + e.zb;
  }

  bool is_holomorphic() const { return deg_zbar() == 0; }

  BasicPoly operator-() const {
    BasicPoly r;
    for (auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  BasicPoly operator+(const BasicPoly& o) const {
    BasicPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  BasicPoly operator-(const BasicPoly& o) const {
    BasicPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  BasicPoly operator*(const BasicPoly& o) const {
    BasicPoly r;
    for (auto& [ea, ca] : terms_)
      for (auto& [eb, cb] : o.terms_) {
        check_exp(std::uint64_t(ea.z) + eb.z, std::uint64_t(ea.zb) + eb.zb);
        r.add_term(Exp{ea.z + eb.z, ea.zb + eb.zb}, ca * cb);
      }
    return r;
  }
  BasicPoly& operator+=(const BasicPoly& o) { *this = *this + o; return *this; }
  BasicPoly& operator-=(const BasicPoly& o) { *this = *this - o; return *this; }
  BasicPoly& operator*=(const BasicPoly& o) { *this = *this * o; return *this; }

  BasicPoly scal(const C& c) const {
    BasicPoly r;
    if (detail::coeff_zero(c)) return r;
    for (auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
  }

  BasicPoly pow(std::uint32_t k) const {
    BasicPoly r(C(1)), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      b = (k >>= 1) ? b * b : b;
    }
    return r;
  }

  // Coefficient conjugation plus z <-> zbar swap; fixes exactly the real-valued polys.
  BasicPoly conj_swap() const {
    BasicPoly r;
    for (auto& [e, c] : terms_) r.terms_[Exp{e.zb, e.z}] = detail::coeff_conj(c);
    return r;
  }

  bool is_real() const { return *this == conj_swap(); }

  BasicPoly diff_z() const {
    BasicPoly r;
    for (auto& [e, c] : terms_)
      if (e.z > 0) r.terms_[Exp{e.z - 1, e.zb}] = c * C(long(e.z));
    return r;
  }
  BasicPoly diff_zbar() const {
    BasicPoly r;
    for (auto& [e, c] : terms_)
      if (e.zb > 0) r.terms_[Exp{e.z, e.zb - 1}] = c * C(long(e.zb));
    return r;
  }

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc(0.0, 0.0), w = std::conj(z);
    for (auto& [e, c] : terms_)
      acc += detail::coeff_to_complex(c) * std::pow(z, int(e.z)) * std::pow(w, int(e.zb));
    return acc;
  }

  bool operator==(const BasicPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const BasicPoly& o) const { return !(*this == o); }

 private:
  static void check_exp(std::uint64_t a, std::uint64_t b) {
    if (a >= kMaxExp || b >= kMaxExp)
      fail(ErrorCode::ExponentOverflow, "monomial exponent exceeds 2^16");
  }
  Terms terms_;
};

using HermPoly = BasicPoly<GaussianRational>;
using FloatPoly = BasicPoly<std::complex<double>>;

inline HermPoly operator*(const GaussianRational& c, const HermPoly& p) { return p.scal(c); }

// u = z*zbar; handy for building the rotation-invariant polys that dominate tests.
HermPoly u_poly(const std::vector<Rational>& coeffs);

// Quotient P/Q when Q divides P exactly (graded-lex division, single divisor);
// nullopt when it does not. Q must be nonzero.
std::optional<HermPoly> divide_exact(const HermPoly& P, const HermPoly& Q);

// Largest m with Q^m | P, plus the cofactor P/Q^m. P nonzero, Q nonconstant.
std::pair<std::uint32_t, HermPoly> factor_out(const HermPoly& P, const HermPoly& Q);

// Monic gcd over Q(i)[z]; inputs must have zbar-degree 0. gcd(0,0) = 0.
HermPoly gcd_univariate(const HermPoly& a, const HermPoly& b);

// Monic univariate gcd of all zbar-layer coefficients.
HermPoly content_z(const HermPoly& p);

// Gcd in Q(i)[z,zbar] via primitive PRS in zbar over Q(i)[z]. Result is
// normalized to graded-lex-monic. gcd(0,0) = 0.
HermPoly gcd_bivariate(const HermPoly& a, const HermPoly& b);

// Divides every entry by the gcd of all entries and rescales so the first
// nonzero entry is graded-lex-monic. Span-preserving cleanup for frame vectors.
void reduce_vector(std::vector<HermPoly>& v);

// (c, h) with P = c|h(z)|^2, c a positive rational and h monic holomorphic,
// iff the Hermitian coefficient matrix of P is PSD of rank 1 (decided
// exactly); nothing otherwise. P must be real and nonzero.
std::optional<std::pair<Rational, HermPoly>> norm_square_factor(const HermPoly& P);

}  // namespace flagcurve
