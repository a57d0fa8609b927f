#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valfield/prime_field.hpp"
#include "valfield/value.hpp"

namespace valfield {

// Truncated formal Laurent series over F_p with an absolute precision bound:
// all exponents below prec are known exactly, nothing is known at or above it.
// prec == nullopt means the series is exact (finitely many terms, nothing
// hidden). Terms are stored sparse, strictly increasing, nonzero.
class LaurentSeries {
 public:
  struct Term {
    std::int64_t exp;
    std::int64_t coeff;  // in [1, p)
  };

  static LaurentSeries zero(std::int64_t p);
  static LaurentSeries one(std::int64_t p);
  static LaurentSeries monomial(std::int64_t p, std::int64_t coeff,
                                std::int64_t exp);
  // Exact series from (exp, coeff) pairs; pairs may repeat and arrive in any
  // order, coefficients are reduced mod p.
  static LaurentSeries exact(std::int64_t p,
                             std::vector<std::pair<std::int64_t, std::int64_t>> t);
  static LaurentSeries with_prec(
      std::int64_t p, std::vector<std::pair<std::int64_t, std::int64_t>> t,
      std::int64_t prec);
  // Unknown tail only: O(t^prec).
  static LaurentSeries big_o(std::int64_t p, std::int64_t prec);

  std::int64_t prime() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_exact() const { return !prec_.has_value(); }
  std::optional<std::int64_t> prec() const { return prec_; }

  bool is_exactly_zero() const { return terms_.empty() && is_exact(); }
  // No known nonzero coefficient (exact zero, or zero to precision).
  bool is_zero_to_prec() const { return terms_.empty(); }

  Value val() const;
  // Known coefficient at exponent e (0 if absent); throws UndecidableValue
  // when e is at or beyond the precision bound.
  Fp coeff_at(std::int64_t e) const;
  Fp leading_coeff() const;  // requires a known term
  Fp residue() const;        // errors: NegativeValue, UndecidableValue

  LaurentSeries truncated(std::int64_t new_prec) const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries operator-() const;

  // Multiplicative inverse. For non-monomial exact input the result is an
  // infinite series, reported at working_prec (default 64) relative digits.
  LaurentSeries inverse(std::optional<std::int64_t> working_prec = {}) const;
  LaurentSeries div(const LaurentSeries& b,
                    std::optional<std::int64_t> working_prec = {}) const;

  // x^(p^n); exact in characteristic p, precision scales by p^n.
  LaurentSeries frobenius(int n = 1) const;
  // Nonnegative integer power (Horner helper).
  LaurentSeries pow(std::int64_t k) const;
  // Inverse of Frobenius; errors NonPthPower unless every exponent is
  // divisible by p. Coefficients are fixed points (a^p = a in F_p).
  LaurentSeries pth_root() const;

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  // Term-list rendering without the GF(p)[[t]] header, e.g. "t^-1 + 1 + O(t^4)".
  std::string str() const;

 private:
  LaurentSeries(std::int64_t p, std::vector<Term> terms,
                std::optional<std::int64_t> prec)
      : p_(p), terms_(std::move(terms)), prec_(prec) {}

  void normalize();
  // Lower bound for the valuation as a plain integer; kInfExp when nothing
  // bounds it (exact zero).
  std::int64_t val_floor() const;
  static std::optional<std::int64_t> min_prec(
      const std::optional<std::int64_t>& a, const std::optional<std::int64_t>& b);

  std::int64_t p_;
  std::vector<Term> terms_;
  std::optional<std::int64_t> prec_;

 public:
  static constexpr std::int64_t kInfExp = INT64_MAX / 4;
};

// ceil(a / b) for b > 0, correct for negative a.
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

}  // namespace valfield
