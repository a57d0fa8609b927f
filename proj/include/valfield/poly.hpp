#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valfield/hahn.hpp"
#include "valfield/laurent.hpp"

namespace valfield {

// Additive polynomial sum_i c_i X^(p^i) over the ambient field F.
template <class F>
class AdditivePoly {
 public:
  AdditivePoly(std::int64_t p, std::vector<F> coeffs)
      : p_(p), coeffs_(std::move(coeffs)) {
    require_prime(p_);
    if (coeffs_.empty()) fail(ErrorCode::BadArgument, "empty additive polynomial");
    while (coeffs_.size() > 1 && coeffs_.back().is_exactly_zero())
      coeffs_.pop_back();
  }

  std::int64_t prime() const { return p_; }
  const std::vector<F>& coeffs() const { return coeffs_; }
  int m() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t degree() const {
    std::int64_t d = 1;
    for (int i = 0; i < m(); ++i) d *= p_;
    return d;
  }

  F eval(const F& x) const {
    F acc = coeffs_[0] * x;
    for (size_t i = 1; i < coeffs_.size(); ++i)
      acc = acc + coeffs_[i] * x.frobenius(static_cast<int>(i));
    return acc;
  }

 private:
  std::int64_t p_;
  std::vector<F> coeffs_;
};

// Dense polynomial over the ambient field, Horner evaluation.
template <class F>
class GeneralPoly {
 public:
  GeneralPoly(std::int64_t p, std::vector<F> coeffs)
      : p_(p), coeffs_(std::move(coeffs)) {
    require_prime(p_);
    while (coeffs_.size() > 1 && coeffs_.back().is_exactly_zero())
      coeffs_.pop_back();
    if (coeffs_.empty()) fail(ErrorCode::BadArgument, "empty polynomial");
  }

  std::int64_t prime() const { return p_; }
  const std::vector<F>& coeffs() const { return coeffs_; }
  std::int64_t degree() const {
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }

  F eval(const F& x) const {
    F acc = coeffs_.back();
    for (size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  // Structural additivity: nonzero coefficients only at exponents p^i.
  std::optional<AdditivePoly<F>> as_additive() const {
    std::vector<F> add;
    std::int64_t q = 1;
    for (size_t k = 0; k < coeffs_.size(); ++k) {
      const bool zero = coeffs_[k].is_exactly_zero();
      if (static_cast<std::int64_t>(k) == q) {
        add.push_back(coeffs_[k]);
        q *= p_;
      } else if (!zero) {
        return std::nullopt;
      }
    }
    if (add.empty()) return std::nullopt;
    return AdditivePoly<F>(p_, std::move(add));
  }

 private:
  std::int64_t p_;
  std::vector<F> coeffs_;
};

template <class F>
GeneralPoly<F> to_general(const AdditivePoly<F>& f, const F& zero) {
  std::int64_t deg = 1;
  for (size_t i = 0; i + 1 < f.coeffs().size(); ++i) deg *= f.prime();
  std::vector<F> out(static_cast<size_t>(deg) + 1, zero);
  std::int64_t e = 1;
  for (size_t i = 0; i < f.coeffs().size(); ++i) {
    out[static_cast<size_t>(e)] = f.coeffs()[i];
    e *= f.prime();
  }
  return GeneralPoly<F>(f.prime(), std::move(out));
}

// X^p - X over Laurent coefficients.
AdditivePoly<LaurentSeries> wp_poly(std::int64_t p);
// X^(p^n) - X.
AdditivePoly<LaurentSeries> wp_poly_level(std::int64_t p, int level);

struct AdditivityVerdict {
  bool additive;
  // Witness pair with f(a+b) != f(a) + f(b), when not additive.
  std::optional<std::pair<LaurentSeries, LaurentSeries>> witness;
};

AdditivityVerdict check_additive(const GeneralPoly<LaurentSeries>& f,
                                 int samples, std::uint64_t seed);

// All x in F_p((t)) with f(x) = c to the working precision, by Newton-polygon
// slope enumeration over integer slopes followed by digitwise refinement.
// When no root exists the best achievable v(f(x) - c) is reported instead.
struct AdditiveSolveResult {
  std::vector<LaurentSeries> roots;
  Value best_achieved = Value::infinity();  // meaningful when roots is empty
};

AdditiveSolveResult additive_solve(const AdditivePoly<LaurentSeries>& f,
                                   const LaurentSeries& c, std::int64_t prec);

// Kernel of an additive polynomial over F_p((t)); handles the inseparable
// case through p-th roots. Deterministic order: by valuation, then digits.
std::vector<LaurentSeries> kernel(const AdditivePoly<LaurentSeries>& f,
                                  std::int64_t prec);

// Roots in F_p((t)) of a general polynomial, restricted to the separable
// split case (all roots simple and rational); errors RootFindingUnsupported
// otherwise. Used by the preimage machinery.
std::vector<LaurentSeries> general_roots(const GeneralPoly<LaurentSeries>& f,
                                         std::int64_t prec);

// Coefficients of f(x + X), binomials taken mod p.
std::vector<LaurentSeries> taylor_shift(const GeneralPoly<LaurentSeries>& f,
                                        const LaurentSeries& x);

// Deterministic pseudo-random series generator shared by sampling verdicts
// and the test suites.
class SeriesSampler {
 public:
  SeriesSampler(std::int64_t p, std::uint64_t seed) : p_(p), state_(seed | 1) {}

  std::uint64_t next_u64() {
    // xorshift64*; stable across platforms, unlike <random> distributions
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  // Random series with valuation in [vmin, vmax] (or exact zero, rarely),
  // known below prec.
  LaurentSeries series(std::int64_t vmin, std::int64_t vmax, std::int64_t prec);

 private:
  std::int64_t p_;
  std::uint64_t state_;
};

}  // namespace valfield
