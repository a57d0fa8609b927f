#pragma once

#include <compare>
#include <string>

#include "valfield/rational.hpp"

namespace valfield {

// Element of the value group plus the two extremes forced by the model:
// infinity (value of 0) and "unknown, but at least q" (forced by truncation).
// Comparisons that a truncation leaves undecided throw instead of guessing.
class Value {
 public:
  enum class Kind { Finite, Infinite, AtLeast };

  static Value finite(Rational q) { return Value(Kind::Finite, q); }
  static Value infinity() { return Value(Kind::Infinite, Rational(0)); }
  static Value at_least(Rational q) { return Value(Kind::AtLeast, q); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_unknown() const { return kind_ == Kind::AtLeast; }

  // Finite value, or lower bound for AtLeast.
  const Rational& amount() const {
    if (kind_ == Kind::Infinite)
      fail(ErrorCode::BadArgument, "infinite value has no finite amount");
    return q_;
  }

  const Rational& finite_amount() const {
    if (kind_ != Kind::Finite)
      fail(ErrorCode::UndecidableValue, "value is not known exactly: " + str());
    return q_;
  }

  // Structural identity (used by tests and canonical output), not the
  // semantic order.
  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == Kind::Infinite) return true;
    return a.q_ == b.q_;
  }

  // Semantic comparison; throws on comparisons truncation cannot decide.
  static std::strong_ordering cmp(const Value& a, const Value& b) {
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite)
      return a.q_ <=> b.q_;
    if (a.kind_ == Kind::Infinite && b.kind_ == Kind::Infinite)
      return std::strong_ordering::equal;
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Infinite)
      return std::strong_ordering::less;
    if (a.kind_ == Kind::Infinite && b.kind_ == Kind::Finite)
      return std::strong_ordering::greater;
    if (a.kind_ == Kind::AtLeast && b.kind_ == Kind::Finite) {
      if (a.q_ > b.q_) return std::strong_ordering::greater;
      fail(ErrorCode::UndecidableValue,
           "cannot compare " + a.str() + " with " + b.str());
    }
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::AtLeast) {
      if (b.q_ > a.q_) return std::strong_ordering::less;
      fail(ErrorCode::UndecidableValue,
           "cannot compare " + a.str() + " with " + b.str());
    }
    fail(ErrorCode::UndecidableValue,
         "cannot compare " + a.str() + " with " + b.str());
  }

  static bool lt(const Value& a, const Value& b) { return cmp(a, b) < 0; }
  static bool gt(const Value& a, const Value& b) { return cmp(a, b) > 0; }
  static bool geq(const Value& a, const Value& b) { return cmp(a, b) >= 0; }
  static bool leq(const Value& a, const Value& b) { return cmp(a, b) <= 0; }
  static bool eq(const Value& a, const Value& b) { return cmp(a, b) == 0; }

  // v(xy) = vx + vy lifted to partial knowledge.
  friend Value operator+(const Value& a, const Value& b) {
    if (a.kind_ == Kind::Infinite || b.kind_ == Kind::Infinite)
      return infinity();
    Rational s = a.q_ + b.q_;
    if (a.kind_ == Kind::AtLeast || b.kind_ == Kind::AtLeast)
      return at_least(s);
    return finite(s);
  }

  // Sound lower bound for min{a, b} (used for ultrametric estimates only).
  static Value min_bound(const Value& a, const Value& b) {
    if (a.kind_ == Kind::Infinite) return b;
    if (b.kind_ == Kind::Infinite) return a;
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite)
      return finite(a.q_ < b.q_ ? a.q_ : b.q_);
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::AtLeast)
      return b.q_ > a.q_ ? a : at_least(b.q_ < a.q_ ? b.q_ : a.q_);
    if (a.kind_ == Kind::AtLeast && b.kind_ == Kind::Finite)
      return a.q_ > b.q_ ? b : at_least(a.q_ < b.q_ ? a.q_ : b.q_);
    return at_least(a.q_ < b.q_ ? a.q_ : b.q_);
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Infinite:
        return "inf";
      case Kind::Finite:
        return q_.str();
      case Kind::AtLeast:
        return ">=" + q_.str();
    }
    return "";
  }

 private:
  Value(Kind k, Rational q) : kind_(k), q_(q) {}

  Kind kind_;
  Rational q_;
};

}  // namespace valfield
