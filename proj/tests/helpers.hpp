#pragma once

// Shared generators and assertion helpers for the unit and acceptance suites.
// Every randomized test seeds its own engine so failures reproduce in
// isolation regardless of test execution order.

#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flagcurve/curves.hpp"
#include "flagcurve/errors.hpp"
#include "flagcurve/parser.hpp"
#include "flagcurve/rationalfn.hpp"

namespace testutil {

using namespace flagcurve;

class Rng {
 public:
  explicit Rng(unsigned seed) : eng_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(eng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  std::complex<double> point(double radius) {
    return {real(-radius, radius), real(-radius, radius)};
  }

  Rational rational(long max_num = 5, long max_den = 4) {
    Rational q(integer(-max_num, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }
  Rational positive_rational(long max_num = 5, long max_den = 4) {
    Rational q(integer(1, max_num), integer(1, max_den));
    q.canonicalize();
    return q;
  }
  GaussianRational gaussian(long max_num = 4, long max_den = 3) {
    return {rational(max_num, max_den), rational(max_num, max_den)};
  }
  GaussianRational gaussian_nonzero(long max_num = 4, long max_den = 3) {
    for (;;) {
      GaussianRational g = gaussian(max_num, max_den);
      if (!g.is_zero()) return g;
    }
  }

  // Random element of C[z, zbar], possibly zero.
  HermPoly poly(int max_deg = 3, int max_terms = 5) {
    HermPoly p;
    long terms = integer(0, max_terms);
    for (long t = 0; t < terms; ++t)
      p.add_term(Exp{std::uint32_t(integer(0, max_deg)), std::uint32_t(integer(0, max_deg))},
                 gaussian());
    return p;
  }
  HermPoly poly_nonzero(int max_deg = 3, int max_terms = 5) {
    for (;;) {
      HermPoly p = poly(max_deg, max_terms);
      if (!p.is_zero()) return p;
    }
  }
  // Random nonzero holomorphic polynomial.
  HermPoly hol(int max_deg = 3, int max_terms = 4) {
    for (;;) {
      HermPoly p;
      long terms = integer(1, max_terms);
      for (long t = 0; t < terms; ++t)
        p.add_term(Exp{std::uint32_t(integer(0, max_deg)), 0}, gaussian());
      if (!p.is_zero()) return p;
    }
  }
  // |h|^2-shaped real nonzero polynomial (values >= 0 pointwise).
  HermPoly real_nonzero(int max_deg = 2, int max_terms = 3) {
    HermPoly p = poly_nonzero(max_deg, max_terms);
    return p * p.conj_swap();
  }
  // Pointwise strictly positive real polynomial: |p|^2 + |q|^2 + 1.
  HermPoly real_positive(int max_deg = 2, int max_terms = 3) {
    HermPoly p = poly(max_deg, max_terms), q = poly(max_deg, max_terms);
    return p * p.conj_swap() + q * q.conj_swap() + HermPoly(1);
  }

  // Constant unitary over Q(i): signed permutation with entries in {1,-1,i,-i}.
  // Returns the images of the basis vectors: U e_col = unit[col] * e_{perm[col]}.
  struct SignedPermutation {
    std::vector<std::uint32_t> perm;
    std::vector<GaussianRational> unit;
  };
  SignedPermutation signed_permutation(std::uint32_t n) {
    SignedPermutation sp;
    sp.perm.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) sp.perm[i] = i;
    for (std::uint32_t i = n; i > 1; --i)
      std::swap(sp.perm[i - 1], sp.perm[std::uint32_t(integer(0, long(i) - 1))]);
    static const GaussianRational units[4] = {
        GaussianRational(1), GaussianRational(-1l), GaussianRational::i(),
        -GaussianRational::i()};
    for (std::uint32_t i = 0; i < n; ++i) sp.unit.push_back(units[integer(0, 3)]);
    return sp;
  }

 private:
  std::mt19937 eng_;
};

inline HermPoly P(const std::string& s) { return parse_poly(s); }
inline RationalFn RF(const std::string& num, const std::string& den) {
  return RationalFn(parse_poly(num), parse_poly(den));
}
inline HermPoly one_plus_u() { return parse_poly("1 + z zbar"); }

// Apply a constant signed permutation to every frame vector of a curve.
inline std::vector<PolyVector> apply_signed_permutation(
    const std::vector<PolyVector>& frame, const Rng::SignedPermutation& sp) {
  std::vector<PolyVector> out;
  for (const PolyVector& v : frame) {
    PolyVector w(v.size());
    for (std::size_t col = 0; col < v.size(); ++col)
      w[sp.perm[col]] = v[col].scal(sp.unit[col]);
    out.push_back(std::move(w));
  }
  return out;
}

// Code of the Error thrown by f, or nothing if f does not throw one.
inline std::optional<ErrorCode> error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  } catch (...) {
    return std::nullopt;
  }
  return std::nullopt;
}

// The pencil curve [1, a z, z^2] in CP^2, exact backend.
inline HolCurve pencil_curve(long a) {
  return make_curve(
      3, {{P("1"), P(std::to_string(a) + "z"), P("z^2")}});
}

// Degree-4 curve into G_2(C^5): two-vector frame, unit weights.
inline HolCurve g25_deg4_curve() {
  return make_curve(5, {{P("1"), P("0"), P("2z"), P("2z^2"), P("z^2")},
                        {P("0"), P("1"), P("0"), P("z^2"), P("0")}});
}

// Degree-6 curve into G_2(C^5); the middle coordinate carries weight 6 so the
// sqrt-6 frame of the constant-curvature example becomes rational.
inline HolCurve g25_deg6_curve() {
  Weights w{Rational(1), Rational(1), Rational(6), Rational(1), Rational(1)};
  return make_curve(5, {{P("1"), P("0"), P("-z^2"), P("-2z^3"), P("-3z^4")},
                        {P("0"), P("1"), P("z"), P("3z^2"), P("4z^3")}},
                    w);
}

}  // namespace testutil
