#include "flagcurve/numbers.hpp"

#include <cctype>

namespace flagcurve {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::NonHolomorphic: return "NonHolomorphic";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::NotAFlag: return "NotAFlag";
    case ErrorCode::NotImmersion: return "NotImmersion";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::WeightCountMismatch: return "WeightCountMismatch";
    case ErrorCode::ZeroMetric: return "ZeroMetric";
    case ErrorCode::ZeroDegrees: return "ZeroDegrees";
    case ErrorCode::NonCompactDomain: return "NonCompactDomain";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::BadCurveFile: return "BadCurveFile";
    case ErrorCode::ExactBackendRequired: return "ExactBackendRequired";
  }
  return "Unknown";
}

Rational rational_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::SyntaxError, "empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    fail(ErrorCode::SyntaxError, "bad rational literal '" + s + "'");
  if (s.find('/') != std::string::npos && q.get_den() == 0)
    fail(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational rational_from_decimal(const std::string& s) {
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string digits;
  long frac_digits = -1;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      if (frac_digits >= 0) ++frac_digits;
    } else if (s[i] == '.' && frac_digits < 0) {
      frac_digits = 0;
    } else {
      fail(ErrorCode::SyntaxError, "bad decimal literal '" + s + "'");
    }
  }
  if (digits.empty()) fail(ErrorCode::SyntaxError, "bad decimal literal '" + s + "'");
  mpz_class num(digits, 10);
  mpz_class den(1);
  for (long k = 0; k < std::max(frac_digits, 0L); ++k) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace flagcurve
