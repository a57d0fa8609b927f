#include "valfield/parse.hpp"

#include <cctype>

namespace valfield {

std::string print_series(const LaurentSeries& x) {
  return "GF(" + std::to_string(x.prime()) + ")[[t]]: " + x.str();
}

std::string print_hahn(const HahnSeries& x) {
  return "GF(" + std::to_string(x.prime()) + ")[[s^Q; t^(1/p^" +
         std::to_string(x.root_depth()) + ")]]: " + x.str();
}

std::string print_poly(const GeneralPoly<LaurentSeries>& f) {
  std::string out;
  for (size_t k = 0; k < f.coeffs().size(); ++k) {
    const LaurentSeries& c = f.coeffs()[k];
    if (c.is_exactly_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += c.terms().size() > 1 ? "(" + c.str() + ")" : c.str();
      continue;
    }
    std::string xp = "X^" + std::to_string(k);
    if (c == LaurentSeries::one(f.prime()))
      out += xp;
    else if (c.terms().size() > 1 || c.prec())
      out += "(" + c.str() + ")*" + xp;
    else
      out += c.str() + "*" + xp;
  }
  if (out.empty()) out = "0";
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError,
         what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool take(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  bool take(const std::string& word) {
    skip_ws();
    if (s.compare(pos, word.size(), word) != 0) return false;
    pos += word.size();
    return true;
  }
  void expect(char c) {
    if (!take(c)) error(std::string("expected '") + c + "'");
  }
  void expect(const std::string& word) {
    if (!take(word)) error("expected \"" + word + "\"");
  }

  std::int64_t integer() {
    skip_ws();
    size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      error("expected an integer");
    std::int64_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > INT64_MAX / 2) {
        pos = start;
        error("integer too large");
      }
      ++pos;
    }
    return neg ? -v : v;
  }

  Rational rational() {
    std::int64_t num = integer();
    if (take('/')) {
      std::int64_t den = integer();
      if (den <= 0) error("denominator must be positive");
      return Rational(num, den);
    }
    return Rational(num);
  }
};

std::int64_t parse_header_prime(Cursor& c) {
  c.expect("GF");
  c.expect('(');
  std::int64_t p = c.integer();
  c.expect(')');
  if (!is_supported_prime(p)) c.error("unsupported prime");
  return p;
}

// <coeff> | <coeff>*t^<exp> | t^<exp>; bare t means t^1.
struct LTermParse {
  std::int64_t exp;
  std::int64_t coeff;
};

LTermParse laurent_term(Cursor& c, std::int64_t p) {
  c.skip_ws();
  std::int64_t coeff = 1;
  bool have_coeff = false;
  if (!c.peek('t')) {
    size_t at = c.pos;
    coeff = c.integer();
    if (coeff < 0 || coeff >= p) {
      c.pos = at;
      c.error("coefficient out of range [0, p)");
    }
    have_coeff = true;
    if (!c.take('*')) return {0, coeff};  // constant term
  }
  c.expect('t');
  std::int64_t exp = 1;
  if (c.take('^')) exp = c.integer();
  (void)have_coeff;
  return {exp, coeff};
}

LaurentSeries parse_series_body(Cursor& c, std::int64_t p) {
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;
  std::optional<std::int64_t> prec;
  if (c.take('0')) {
    if (!c.done()) c.error("trailing input after 0");
    return LaurentSeries::zero(p);
  }
  while (true) {
    if (c.take("O(")) {
      c.expect('t');
      c.expect('^');
      prec = c.integer();
      c.expect(')');
      break;
    }
    LTermParse t = laurent_term(c, p);
    terms.push_back({t.exp, t.coeff});
    if (!c.take('+')) break;
  }
  if (!c.done()) c.error("trailing input");
  if (prec) return LaurentSeries::with_prec(p, std::move(terms), *prec);
  return LaurentSeries::exact(p, std::move(terms));
}

}  // namespace

LaurentSeries parse_series(const std::string& text) {
  Cursor c{text};
  std::int64_t p = parse_header_prime(c);
  c.expect("[[t]]");
  c.expect(':');
  return parse_series_body(c, p);
}

namespace {

// t-coefficient of a Hahn term: a Laurent series in u = t^(1/p^M), written
// with rational t-exponents. upt = p^M.
LaurentSeries hahn_coeff_term(Cursor& c, std::int64_t p, std::int64_t upt) {
  c.skip_ws();
  std::int64_t coeff = 1;
  if (!c.peek('t')) {
    size_t at = c.pos;
    coeff = c.integer();
    if (coeff < 0 || coeff >= p) {
      c.pos = at;
      c.error("coefficient out of range [0, p)");
    }
    if (!c.take('*')) return LaurentSeries::monomial(p, coeff, 0);
  }
  c.expect('t');
  Rational texp(1);
  if (c.take('^')) {
    if (c.take('(')) {
      texp = c.rational();
      c.expect(')');
    } else {
      texp = Rational(c.integer());
    }
  }
  Rational uexp = texp * Rational(upt);
  if (!uexp.is_integer())
    c.error("t-exponent " + texp.str() + " is not in (1/p^M)Z");
  return LaurentSeries::monomial(p, coeff, uexp.num());
}

LaurentSeries hahn_coeff_expr(Cursor& c, std::int64_t p, std::int64_t upt) {
  if (c.take('(')) {
    LaurentSeries acc = LaurentSeries::zero(p);
    std::optional<std::int64_t> prec;
    while (true) {
      if (c.take("O(")) {
        c.expect('t');
        c.expect('^');
        Rational texp;
        if (c.take('(')) {
          texp = c.rational();
          c.expect(')');
        } else {
          texp = Rational(c.integer());
        }
        Rational uexp = texp * Rational(upt);
        if (!uexp.is_integer()) c.error("t-precision not in (1/p^M)Z");
        prec = uexp.num();
        c.expect(')');
        break;
      }
      acc = acc + hahn_coeff_term(c, p, upt);
      if (!c.take('+')) break;
    }
    c.expect(')');
    if (prec) return acc.truncated(*prec);
    return acc;
  }
  return hahn_coeff_term(c, p, upt);
}

}  // namespace

HahnSeries parse_hahn(const std::string& text, std::int64_t denom_cap) {
  Cursor c{text};
  std::int64_t p = parse_header_prime(c);
  c.expect("[[s^Q;");
  c.expect("t^(1/p^");
  std::int64_t M = c.integer();
  if (M < 0 || M > 40) c.error("root depth out of range");
  c.expect(")]]");
  c.expect(':');
  std::int64_t upt = 1;
  for (int i = 0; i < M; ++i) upt *= p;

  HahnSeries acc = HahnSeries::zero(p, static_cast<int>(M), denom_cap);
  if (c.take('0')) {
    if (!c.done()) c.error("trailing input after 0");
    return acc;
  }
  std::optional<Rational> sprec;
  std::vector<HahnSeries::Term> terms;
  while (true) {
    if (c.take("O(")) {
      c.expect('s');
      c.expect('^');
      c.expect('(');
      sprec = c.rational();
      c.expect(')');
      c.expect(')');
      break;
    }
    if (c.peek('s')) {
      c.expect('s');
      c.expect('^');
      c.expect('(');
      Rational sexp = c.rational();
      c.expect(')');
      terms.push_back({sexp, LaurentSeries::one(p)});
    } else {
      LaurentSeries coeff = hahn_coeff_expr(c, p, upt);
      Rational sexp(0);
      if (c.take('*')) {
        c.expect('s');
        c.expect('^');
        c.expect('(');
        sexp = c.rational();
        c.expect(')');
      }
      terms.push_back({sexp, std::move(coeff)});
    }
    if (!c.take('+')) break;
  }
  if (!c.done()) c.error("trailing input");
  return HahnSeries::from_terms(p, static_cast<int>(M), std::move(terms),
                                sprec, denom_cap);
}

std::variant<LaurentSeries, HahnSeries> parse_field_elem(
    const std::string& text, std::int64_t denom_cap) {
  if (text.find("[[s^Q") != std::string::npos)
    return parse_hahn(text, denom_cap);
  return parse_series(text);
}

GeneralPoly<LaurentSeries> parse_poly(const std::string& text, std::int64_t p) {
  Cursor c{text};
  std::vector<LaurentSeries> coeffs(1, LaurentSeries::zero(p));
  auto bump = [&](size_t k, const LaurentSeries& v) {
    while (coeffs.size() <= k) coeffs.push_back(LaurentSeries::zero(p));
    coeffs[k] = coeffs[k] + v;
  };
  while (true) {
    if (c.take("wp(X)")) {
      bump(1, LaurentSeries::monomial(p, -1, 0));
      bump(static_cast<size_t>(p), LaurentSeries::one(p));
    } else {
      // [coeffexpr *] X[^k]  |  coeffexpr
      LaurentSeries coeff = LaurentSeries::one(p);
      bool have_coeff = false;
      if (!c.peek('X')) {
        if (c.take('(')) {
          LaurentSeries acc = LaurentSeries::zero(p);
          while (true) {
            LTermParse t = laurent_term(c, p);
            acc = acc + LaurentSeries::monomial(p, t.coeff, t.exp);
            if (!c.take('+')) break;
          }
          c.expect(')');
          coeff = acc;
        } else {
          LTermParse t = laurent_term(c, p);
          coeff = LaurentSeries::monomial(p, t.coeff, t.exp);
        }
        have_coeff = true;
      }
      if (c.take('*') || (!have_coeff && c.peek('X'))) {
        c.expect('X');
        std::int64_t k = 1;
        if (c.take('^')) k = c.integer();
        if (k < 0 || k > 4096) c.error("X-exponent out of range");
        bump(static_cast<size_t>(k), coeff);
      } else if (have_coeff && c.peek('X')) {
        c.expect('X');
        std::int64_t k = 1;
        if (c.take('^')) k = c.integer();
        if (k < 0 || k > 4096) c.error("X-exponent out of range");
        bump(static_cast<size_t>(k), coeff);
      } else {
        bump(0, coeff);  // constant term
      }
    }
    if (!c.take('+')) break;
  }
  if (!c.done()) c.error("trailing input");
  return GeneralPoly<LaurentSeries>(p, std::move(coeffs));
}

PolygroupSpec parse_polygroup(const std::string& text, std::int64_t p,
                              int level) {
  PolygroupSpec spec;
  spec.p = p;
  spec.level = level;
  size_t start = 0;
  while (start <= text.size()) {
    size_t semi = text.find(';', start);
    std::string piece = text.substr(
        start, semi == std::string::npos ? std::string::npos : semi - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) {
      GeneralPoly<LaurentSeries> g = parse_poly(piece, p);
      auto add = g.as_additive();
      if (!add)
        fail(ErrorCode::BadArgument,
             "polygroup entries must be additive: " + piece);
      spec.fs.push_back(*add);
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (spec.fs.empty()) fail(ErrorCode::BadArgument, "empty polygroup spec");
  return spec;
}

}  // namespace valfield
