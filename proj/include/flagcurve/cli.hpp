#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "flagcurve/oracle.hpp"

namespace flagcurve {

struct CurveFile {
  std::string backend;  // "exact" or "float"
  std::variant<HolCurve, FloatCurve> curve;

  bool is_exact() const { return std::holds_alternative<HolCurve>(curve); }
  const HolCurve& exact() const { return std::get<HolCurve>(curve); }
  const FloatCurve& fl() const { return std::get<FloatCurve>(curve); }
};

// Schema: {"n": int, "backend": "exact"|"float", "compact": bool,
//          "frames": [[poly, ...], ...], "weights": [num, ...]?}
// Frame entries are polynomial strings; weights accept integers, "p/q"
// strings, and (float backend only) decimals.
CurveFile parse_curve_json(const std::string& text);
CurveFile load_curve_file(const std::string& path);

// Exit codes: 0 ok, 2 parse errors, 3 pipeline errors, 4 weight-count
// mismatch, 5 non-compact domain where compactness is required, 6 float
// input to an exact-only command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagcurve
