#include "flagcurve/parser.hpp"

#include <cctype>
#include <sstream>

namespace flagcurve {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void err(const std::string& what) {
    fail(ErrorCode::SyntaxError, what + " at position " + std::to_string(i));
  }

  bool at_number() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }

  // digits [('/' digits) | ('.' digits)]
  Rational number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) err("expected number");
    if (i < s.size() && s[i] == '/') {
      ++i;
      size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == dstart) err("expected denominator");
      return rational_from_string(s.substr(start, i - start));
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == dstart) err("expected fractional digits");
      return rational_from_decimal(s.substr(start, i - start));
    }
    return rational_from_string(s.substr(start, i - start));
  }

  bool try_char(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }

  // 'z' not followed by "bar"
  bool at_z() {
    skip_ws();
    return i < s.size() && s[i] == 'z' && s.compare(i, 4, "zbar") != 0;
  }
  bool at_zbar() {
    skip_ws();
    return i < s.size() && s.compare(i, 4, "zbar") == 0;
  }

  std::uint32_t exponent() {
    if (!try_char('^')) return 1;
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) err("expected exponent");
    unsigned long v = std::stoul(s.substr(start, i - start));
    if (v >= kMaxExp) err("exponent exceeds 2^16");
    return static_cast<std::uint32_t>(v);
  }

  // [sign] NUMBER ['i'] [sign [NUMBER] 'i']  |  [sign] 'i'
  GaussianRational paren_complex() {
    GaussianRational acc(0);
    bool first = true;
    for (;;) {
      skip_ws();
      Rational sign(1);
      if (try_char('+')) {
      } else if (try_char('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      skip_ws();
      Rational mag(1);
      bool had_number = false;
      if (at_number()) {
        mag = number();
        had_number = true;
      }
      if (try_char('i')) {
        acc += GaussianRational(Rational(0), sign * mag);
      } else if (had_number) {
        acc += GaussianRational(sign * mag);
      } else {
        err("expected number or i");
      }
      first = false;
    }
    return acc;
  }

  // coefficient of one term; nullopt when the term starts with its monomial
  std::optional<GaussianRational> coefficient() {
    if (try_char('(')) {
      GaussianRational c = paren_complex();
      if (!try_char(')')) err("expected ')'");
      return c;
    }
    if (try_char('i')) return GaussianRational::i();
    if (at_number()) {
      Rational r = number();
      if (try_char('i')) return GaussianRational(Rational(0), r);
      return GaussianRational(r);
    }
    return std::nullopt;
  }
};

}  // namespace

HermPoly parse_poly(const std::string& s) {
  Cursor c{s};
  HermPoly p;
  bool any = false;
  for (;;) {
    Rational sign(1);
    if (c.try_char('+')) {
    } else if (c.try_char('-')) {
      sign = -1;
    } else if (any) {
      if (c.done()) break;
      c.err("expected '+' or '-'");
    } else if (c.done()) {
      c.err("empty polynomial");
    }

    std::optional<GaussianRational> coeff = c.coefficient();
    std::uint32_t ez = 0, ezb = 0;
    bool saw_var = false;
    if (c.at_z()) {
      ++c.i;
      ez = c.exponent();
      saw_var = true;
    }
    if (c.at_zbar()) {
      c.i += 4;
      ezb = c.exponent();
      saw_var = true;
    }
    if (!coeff && !saw_var) c.err("expected term");
    GaussianRational v = coeff.value_or(GaussianRational(1));
    p.add_term(Exp{ez, ezb}, GaussianRational(sign) * v);
    any = true;
  }
  return p;
}

HermPoly parse_hol(const std::string& s) {
  HermPoly p = parse_poly(s);
  if (!p.is_holomorphic())
    fail(ErrorCode::NonHolomorphic, "zbar not allowed here: '" + s + "'");
  return p;
}

namespace {

void print_positive_rational(std::ostream& os, const Rational& r, bool omit_unit) {
  if (r == 1 && omit_unit) return;
  os << r.get_str();
}

// Magnitude part of one coefficient; caller has handled the leading sign.
// `has_monomial` controls whether a unit coefficient is dropped.
void print_coeff_magnitude(std::ostream& os, const GaussianRational& c, bool has_monomial) {
  if (c.im == 0) {
    Rational mag = c.re < 0 ? Rational(-c.re) : c.re;
    if (!(mag == 1 && has_monomial)) os << mag.get_str();
  } else if (c.re == 0) {
    Rational mag = c.im < 0 ? Rational(-c.im) : c.im;
    print_positive_rational(os, mag, true);
    os << 'i';
  } else {
    os << '(' << c.re.get_str();
    Rational mag = c.im < 0 ? Rational(-c.im) : c.im;
    os << (c.im < 0 ? '-' : '+');
    print_positive_rational(os, mag, true);
    os << "i)";
  }
}

// Mixed coefficients keep their real part's sign inside the parentheses and
// join with '+'; real and pure-imaginary ones move the sign to the separator.
bool coeff_prints_negative(const GaussianRational& c) {
  if (c.im == 0) return c.re < 0;
  if (c.re == 0) return c.im < 0;
  return false;
}

}  // namespace

std::string to_string(const HermPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    bool neg = coeff_prints_negative(c);
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    bool has_monomial = e.z > 0 || e.zb > 0;
    GaussianRational mag = c;
    if (neg) mag = -mag;
    size_t before = os.tellp();
    print_coeff_magnitude(os, mag, has_monomial);
    bool printed_coeff = size_t(os.tellp()) != before;
    if (e.z > 0) {
      if (printed_coeff) os << ' ';
      os << 'z';
      if (e.z > 1) os << '^' << e.z;
    }
    if (e.zb > 0) {
      if (printed_coeff || e.z > 0) os << ' ';
      os << "zbar";
      if (e.zb > 1) os << '^' << e.zb;
    }
    first = false;
  }
  return os.str();
}

std::string to_string(const RationalFn& f) {
  if (f.den() == HermPoly(1)) return to_string(f.num());
  return "(" + to_string(f.num()) + ") / (" + to_string(f.den()) + ")";
}

}  // namespace flagcurve
