#pragma once

#include <stdexcept>
#include <string>

namespace flagcurve {

enum class ErrorCode {
  DivisionByZero,
  ZeroPolynomial,
  ExponentOverflow,
  NotReal,
  NonHolomorphic,
  SyntaxError,
  DimensionMismatch,
  IndexOutOfRange,
  SingularGram,
  NotAFlag,
  NotImmersion,
  RankDeficient,
  RankAmbiguous,
  NonTerminating,
  WeightCountMismatch,
  ZeroMetric,
  ZeroDegrees,
  NonCompactDomain,
  PoleHit,
  NonPositive,
  NoConvergence,
  DimensionOverflow,
  BadCurveFile,
  ExactBackendRequired,
};

const char* error_name(ErrorCode c);

// Single exception type for the whole library; `code` lets callers and the
// CLI map failures to exit codes without string matching.
struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace flagcurve
