#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "valfield/poly.hpp"

namespace valfield {

// A finite family of additive polynomials; the sum of their images is the
// polygroup under study. `level` is the Frobenius power used by the twist
// monomials (1 for the classical shape, n for the p^n variant).
struct PolygroupSpec {
  std::int64_t p;
  int level = 1;
  std::vector<AdditivePoly<LaurentSeries>> fs;

  std::int64_t P() const {
    std::int64_t q = 1;
    for (int i = 0; i < level; ++i) q *= p;
    return q;
  }

  // f_0 = X^P - X and f_i = c_i X^P: the shape whose witnesses are
  // constructive. Returns the twist coefficients c_1..c_m when matched.
  std::optional<std::vector<LaurentSeries>> twist_shape() const;

  // (X^P - X, t X^P, ..., t^(P-1) X^P)
  static PolygroupSpec wp_twist(std::int64_t p, int level = 1);
};

// The pd predicate: v(sum z - sum z') > v(sum z)  and  v(sum z') = min v(z'_i),
// with v(0) = inf. A sum that is exactly 0 cannot satisfy the strict
// inequality, so pd is false on it (degenerate input).
bool pd_check(const std::vector<LaurentSeries>& z,
              const std::vector<LaurentSeries>& zp);

struct PdWitness {
  enum class Kind { NotNeeded, NotNeededDegenerate, Witness } kind;
  std::vector<LaurentSeries> y;  // set for Kind::Witness
};

// Constructive replacement tuple: when v(sum f_i(x_i)) > min v(f_i(x_i)),
// y = (-sum, 0, ..., 0) works; in henselian-exact mode y_0 solves
// wp(y_0) = sum exactly. Requires the twist shape with valuation-independent
// coefficients (PreconditionFailed otherwise).
PdWitness pd_witness(const PolygroupSpec& spec,
                     const std::vector<LaurentSeries>& x,
                     bool henselian_exact = false,
                     std::optional<std::int64_t> working_prec = {});

enum class IndependenceMode { ExactCosets, Sampled };

struct IndependenceVerdict {
  enum class Kind { IndependentProven, IndependentSampled, Dependent } kind;
  std::vector<LaurentSeries> witness;  // the d-tuple for Dependent
  std::string note;
};

// K^P-valuation independence of c_0..c_m. Exact mode applies the distinct-
// coset criterion on v(c_i) mod P and falls back to sampling when cosets
// collide; sampling enumerates small F_p tuples first, then random P-th
// powers.
IndependenceVerdict valuation_independent(
    const std::vector<LaurentSeries>& c,
    IndependenceMode mode = IndependenceMode::ExactCosets, int level = 1,
    int samples = 200, std::uint64_t seed = 1);

struct PdSumVerdict {
  enum class Kind { HoldsOnSamples, FailureWitness } kind;
  std::vector<LaurentSeries> failure_x;
  int samples_run = 0;
  int degenerate = 0;  // sampled tuples with sum exactly 0, flagged not judged
  std::string note;
};

PdSumVerdict pd_sum_check(const PolygroupSpec& spec, int samples,
                          std::uint64_t seed, std::int64_t prec = 32);

// The level-n statement admits two readings: the written level-1 polygroup
// and its p^n analogue. Both verdicts are computed and labeled; neither is
// guessed to be the intended one.
struct PdBothReadings {
  PdSumVerdict as_written;  // (X^p - X, t X^p, ..., t^(p-1) X^p)
  PdSumVerdict level_n;     // (X^P - X, t X^P, ..., t^(P-1) X^P), P = p^n
  std::string note;
};

PdBothReadings pd_both_readings(std::int64_t p, int n, int samples,
                                std::uint64_t seed, std::int64_t prec = 32);

// The p-degree identity [K : K^p] = (vK : pvK) [Kv : (Kv)^p] read off the
// built-in field models.
struct FieldModelDesc {
  enum class Kind { Laurent, Hahn } kind;
  std::int64_t p = 2;
  int root_depth = 0;       // Hahn
  int residue_pdeg = 1;     // Hahn: [Kv : (Kv)^p] of the coefficient field
};

struct FundamentalIdentityReport {
  std::int64_t p_degree;
  std::int64_t ramification_count;  // (vK : pvK)
  std::int64_t residue_p_degree;
  bool holds;
};

FundamentalIdentityReport fundamental_identity_report(const FieldModelDesc& m);

}  // namespace valfield
