#pragma once

#include <cstdint>
#include <string>

#include "valfield/errors.hpp"

namespace valfield {

// Primes up to 64 are supported; residue enumeration in the root-finding
// kernels is exhaustive over F_p, so p stays small by design.
inline bool is_supported_prime(std::int64_t p) {
  if (p < 2 || p > 64) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(std::int64_t p) {
  if (!is_supported_prime(p))
    fail(ErrorCode::BadArgument,
         "p = " + std::to_string(p) + " is not a supported prime (2..64)");
}

// Element of F_p, stored as the canonical residue in [0, p).
class Fp {
 public:
  Fp(std::int64_t value, std::int64_t p) : p_(p) {
    require_prime(p);
    v_ = value % p;
    if (v_ < 0) v_ += p;
  }

  std::int64_t value() const { return v_; }
  std::int64_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    a.check(b);
    return Fp(a.v_ + b.v_, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    a.check(b);
    return Fp(a.v_ - b.v_, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    a.check(b);
    return Fp(a.v_ * b.v_, a.p_);
  }
  Fp operator-() const { return Fp(-v_, p_); }

  Fp pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Fp r(1, p_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  Fp inv() const {
    if (v_ == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_p");
    return pow(p_ - 2);  // Fermat; fine for p = 2 as well
  }

  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

  friend bool operator==(Fp a, Fp b) { return a.p_ == b.p_ && a.v_ == b.v_; }

 private:
  void check(const Fp& o) const {
    if (p_ != o.p_)
      fail(ErrorCode::BadArgument, "mixed characteristics in F_p arithmetic");
  }

  std::int64_t v_;
  std::int64_t p_;
};

}  // namespace valfield
