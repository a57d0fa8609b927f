#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valfield/laurent.hpp"
#include "valfield/rational.hpp"
#include "valfield/value.hpp"

namespace valfield {

// Lexicographic value (s-component dominant, then the t-component in
// (1/p^M)Z). AtLeast carries only the s-bound: a truncation O(s^q) says
// nothing about the coefficient at s^q.
class CompositeValue {
 public:
  enum class Kind { Finite, Infinite, AtLeast };

  static CompositeValue finite(Rational s, Rational t) {
    return CompositeValue(Kind::Finite, s, t);
  }
  static CompositeValue infinity() {
    return CompositeValue(Kind::Infinite, 0, 0);
  }
  static CompositeValue at_least(Rational s) {
    return CompositeValue(Kind::AtLeast, s, 0);
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& s_part() const { return s_; }
  const Rational& t_part() const { return t_; }

  friend bool operator==(const CompositeValue& a, const CompositeValue& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::Infinite) return true;
    if (a.kind_ == Kind::AtLeast) return a.s_ == b.s_;
    return a.s_ == b.s_ && a.t_ == b.t_;
  }

  static std::strong_ordering cmp(const CompositeValue& a,
                                  const CompositeValue& b);

  friend CompositeValue operator+(const CompositeValue& a,
                                  const CompositeValue& b) {
    if (a.kind_ == Kind::Infinite || b.kind_ == Kind::Infinite)
      return infinity();
    if (a.kind_ == Kind::AtLeast || b.kind_ == Kind::AtLeast)
      return at_least(a.s_ + b.s_);
    return finite(a.s_ + b.s_, a.t_ + b.t_);
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Infinite:
        return "inf";
      case Kind::AtLeast:
        return ">=" + s_.str();
      case Kind::Finite:
        return "(" + s_.str() + ", " + t_.str() + ")";
    }
    return "";
  }

 private:
  CompositeValue(Kind k, Rational s, Rational t) : kind_(k), s_(s), t_(t) {}

  Kind kind_;
  Rational s_;
  Rational t_;
};

// Sparse series in s with rational exponents over F_p((u)), u = t^(1/p^M).
// M is a fixed root depth chosen per construction; exponent denominators are
// capped and exceeding the cap is an error, never a silent truncation.
class HahnSeries {
 public:
  struct Term {
    Rational sexp;
    LaurentSeries coeff;  // in u; nonzero with decidable valuation
  };

  static constexpr std::int64_t kDefaultDenomCap = 1'000'000;

  static HahnSeries zero(std::int64_t p, int root_depth,
                         std::int64_t denom_cap = kDefaultDenomCap);
  static HahnSeries one(std::int64_t p, int root_depth,
                        std::int64_t denom_cap = kDefaultDenomCap);
  // coeff * s^sexp with coeff given as a series in u.
  static HahnSeries term(std::int64_t p, int root_depth, Rational sexp,
                         LaurentSeries coeff,
                         std::int64_t denom_cap = kDefaultDenomCap);
  // c * t^texp * s^sexp; texp must lie in (1/p^M)Z.
  static HahnSeries t_monomial(std::int64_t p, int root_depth,
                               std::int64_t c, Rational texp, Rational sexp,
                               std::int64_t denom_cap = kDefaultDenomCap);
  static HahnSeries from_terms(std::int64_t p, int root_depth,
                               std::vector<Term> terms,
                               std::optional<Rational> sprec,
                               std::int64_t denom_cap = kDefaultDenomCap);

  std::int64_t prime() const { return p_; }
  int root_depth() const { return depth_; }
  std::int64_t denom_cap() const { return cap_; }
  std::int64_t u_per_t() const { return u_per_t_; }  // p^M
  const std::vector<Term>& terms() const { return terms_; }
  bool is_exact() const { return !sprec_.has_value(); }
  std::optional<Rational> sprec() const { return sprec_; }
  bool is_exactly_zero() const { return terms_.empty() && is_exact(); }
  bool is_zero_to_prec() const { return terms_.empty(); }

  Value sval() const;
  CompositeValue composite_val() const;
  // t-adic value of the coefficient at a given s-exponent.
  Rational coeff_tval(const Term& t) const;

  friend HahnSeries operator+(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator-(const HahnSeries& a, const HahnSeries& b);
  friend HahnSeries operator*(const HahnSeries& a, const HahnSeries& b);
  HahnSeries operator-() const;

  HahnSeries frobenius(int n = 1) const;  // x^(p^n), exact
  // r with r^p = x on the listed support; errors RootDepthExceeded when a
  // coefficient needs u-exponents finer than depth M, DenominatorCapExceeded
  // when an s-exponent denominator leaves the cap.
  HahnSeries pth_root(int n = 1) const;

  HahnSeries truncated(Rational new_sprec) const;

  friend bool operator==(const HahnSeries& a, const HahnSeries& b);

  std::string str() const;  // body only, no GF header

 private:
  HahnSeries(std::int64_t p, int depth, std::int64_t cap)
      : p_(p), depth_(depth), cap_(cap), u_per_t_(ipow(p, depth)) {}

  static std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  void normalize();
  void check_compatible(const HahnSeries& o) const;
  void check_cap(const Rational& sexp) const;

  std::int64_t p_;
  int depth_;
  std::int64_t cap_;
  std::int64_t u_per_t_;
  std::vector<Term> terms_;
  std::optional<Rational> sprec_;
};

}  // namespace valfield
