#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "valfield/laurent.hpp"

namespace valfield {

// x = sum_i t^i x_i^p with parts split off the exponent residue classes
// mod p; the unique such decomposition over F_p((t)).
std::vector<LaurentSeries> frobenius_parts(const LaurentSeries& x);

// u with u^(p^n) - u = m for v(m) > 0: the geometric sum -sum_k m^(p^(nk)),
// truncated at the precision of m (or working_prec for exact input).
// Errors NonpositiveValue unless v(m) > 0 is decidable.
LaurentSeries wp_solve(const LaurentSeries& m, int level = 1,
                       std::optional<std::int64_t> working_prec = {});

// x = y + x_0^P - x_0 + t x_1^P + ... + t^(P-1) x_(P-1)^P with v(y) >= 0,
// P = p^level. The corrective summand y drops to a constant j in F_p in the
// henselian variant, the rest being absorbed through wp_solve.
struct ASDecomposition {
  LaurentSeries y;
  bool henselian = false;
  std::int64_t j = 0;  // set in the henselian variant
  int level = 1;
  std::vector<LaurentSeries> parts;  // x_0 .. x_(P-1)
  int iterations = 0;

  LaurentSeries reexpand() const;
};

ASDecomposition as_decompose(const LaurentSeries& x, int level = 1);
ASDecomposition as_decompose_henselian(
    const LaurentSeries& x, int level = 1,
    std::optional<std::int64_t> working_prec = {});

}  // namespace valfield
