#pragma once

#include <string>

#include "flagcurve/rationalfn.hpp"

namespace flagcurve {

// Grammar: terms joined by +/-, each term an optional coefficient followed by
// an optional monomial in z and zbar ("2/3 z^2 zbar", "(1+i)z", "3i", "1.5").
// Juxtaposition multiplies; whitespace is insignificant ("zzbar" == "z zbar").
// Decimal literals are converted to exact rationals. Throws SyntaxError with
// the offending position.
HermPoly parse_poly(const std::string& s);

// Same, but rejects zbar (NonHolomorphic). Curve file entries go through this.
HermPoly parse_hol(const std::string& s);

// Canonical form: graded-lex ascending, unit real coefficients omitted before
// variables, imaginary parts as "3i"/"i", mixed coefficients parenthesized.
// parse_poly(to_string(p)) == p, and printing is a fixed point on its output.
std::string to_string(const HermPoly& p);

// "num" when den == 1, otherwise "(num) / (den)".
std::string to_string(const RationalFn& f);

}  // namespace flagcurve
