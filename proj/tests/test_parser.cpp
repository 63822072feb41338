#include <doctest.h>

#include <string>

#include "flagcurve/parser.hpp"
#include "helpers.hpp"

using namespace flagcurve;
using testutil::P;
using testutil::RF;
using testutil::Rng;
using testutil::error_code_of;

TEST_CASE("grammar: terms, coefficients, monomials") {
  CHECK(parse_poly("2z^2 + (1/2+1/2i)z") ==
        HermPoly::monomial(GaussianRational(Rational(2)), 2, 0) +
            HermPoly::monomial(GaussianRational(Rational(1, 2), Rational(1, 2)), 1, 0));
  CHECK(parse_poly("z zbar") == HermPoly::monomial(GaussianRational(1l), 1, 1));
  CHECK(parse_poly("zzbar") == parse_poly("z zbar"));  // whitespace-insensitive
  CHECK(parse_poly(" z  zbar ") == parse_poly("z zbar"));
  CHECK(parse_poly("z^2zbar^3") == HermPoly::monomial(GaussianRational(1l), 2, 3));
  CHECK(parse_poly("3i") == HermPoly(GaussianRational(Rational(0), Rational(3))));
  CHECK(parse_poly("i") == HermPoly(GaussianRational::i()));
  CHECK(parse_poly("-i z") == HermPoly::monomial(-GaussianRational::i(), 1, 0));
  CHECK(parse_poly("2/3") == HermPoly(GaussianRational(Rational(2, 3))));
  CHECK(parse_poly("1.5z") == HermPoly::monomial(GaussianRational(Rational(3, 2)), 1, 0));
  CHECK(parse_poly("0.25") == HermPoly(GaussianRational(Rational(1, 4))));
  CHECK(parse_poly("1 - z + z^2 - z^3") ==
        HermPoly(1) - P("z") + P("z^2") - P("z^3"));
  CHECK(parse_poly("-z") == -HermPoly::z());
  CHECK(parse_poly("z^0") == HermPoly(1));
  CHECK(parse_poly("(1/2-3/4i) zbar^3") ==
        HermPoly::monomial(GaussianRational(Rational(1, 2), Rational(-3, 4)), 0, 3));
  // Like terms collapse; cancellation to zero is fine.
  CHECK(parse_poly("z + z") == P("2z"));
  CHECK(parse_poly("z - z").is_zero());
}

TEST_CASE("syntax errors carry a position") {
  auto check_err = [](const std::string& text, const std::string& pos_fragment) {
    try {
      parse_poly(text);
      FAIL(("no SyntaxError for: " + text));
    } catch (const Error& e) {
      CHECK(e.code == ErrorCode::SyntaxError);
      CHECK(std::string(e.what()).find("position") != std::string::npos);
      CHECK(std::string(e.what()).find(pos_fragment) != std::string::npos);
    }
  };
  check_err("z^", "position 2");
  check_err("(1+", "position 3");
  check_err("q", "position 0");
  check_err("", "position 0");
  check_err("z^^2", "position 2");
  check_err("1 +", "position 3");
  // Exponents beyond the representable bound are syntax errors at parse time.
  check_err("z^100000", "position 8");
}

TEST_CASE("parse_hol rejects zbar") {
  HermPoly h = parse_hol("(1+2i)z^3");
  CHECK(h == HermPoly::monomial(GaussianRational(Rational(1), Rational(2)), 3, 0));
  CHECK(error_code_of([] { parse_hol("zbar"); }) == ErrorCode::NonHolomorphic);
  CHECK(error_code_of([] { parse_hol("z + z zbar"); }) == ErrorCode::NonHolomorphic);
}

TEST_CASE("canonical printing literals") {
  CHECK(to_string(P("1 + z^2")) == "1 + z^2");
  CHECK(to_string(P("z zbar")) == "z zbar");
  CHECK(to_string(-HermPoly::z()) == "-z");
  CHECK(to_string(P("(1+i)z")) == "(1+i) z");
  CHECK(to_string(P("3i")) == "3i");
  CHECK(to_string(P("i")) == "i");
  CHECK(to_string(P("z^2 zbar")) == "z^2 zbar");
  CHECK(to_string(P("1/2 z")) == "1/2 z");
  CHECK(to_string(HermPoly(-1l)) == "-1");
  CHECK(to_string(HermPoly()) == "0");
  CHECK(to_string(P("(1/2-3/4i) zbar^3")) == "(1/2-3/4i) zbar^3");
  CHECK(to_string(P("1 + z zbar - z")) == "1 - z + z zbar");  // graded-lex ascending
}

TEST_CASE("rational function printing") {
  CHECK(to_string(RationalFn(HermPoly::z())) == "z");
  CHECK(to_string(RF("1", "1 + z zbar")) == "(1) / (1 + z zbar)");
  // Reduction happens before printing.
  CHECK(to_string(RF("2 z zbar", "2 + 2 z zbar")) == "(z zbar) / (1 + z zbar)");
}

TEST_CASE("round trip and printer fixed point") {
  Rng rng(1101);
  for (int it = 0; it < 500; ++it) {
    HermPoly p = rng.poly(4, 6);
    std::string s = to_string(p);
    CHECK(parse_poly(s) == p);
    CHECK(to_string(parse_poly(s)) == s);
  }
}

TEST_CASE("printing is deterministic") {
  HermPoly p = P("1/3 + 2z - i zbar^2 + (1+i) z^3 zbar");
  CHECK(to_string(p) == to_string(P(to_string(p))));
  std::string a = to_string(p), b = to_string(p);
  CHECK(a == b);
}
