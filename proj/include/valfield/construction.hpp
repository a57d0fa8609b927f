#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valfield/hahn.hpp"
#include "valfield/rational.hpp"

namespace valfield {

// Parameters of the finite-depth counterexample data: a tower of p^n-th
// roots twisted by t^i s^(-p^n/q_(i,j)) terms, over primes growing faster
// than p^(j+n).
struct ConstructionParams {
  std::int64_t p = 2;
  int n = 1;  // Frobenius level
  int m = 1;  // twist coefficients c_1..c_m (c_i = t^i)
  int J = 3;  // tower depth
  int M = 3;  // u = t^(1/p^M); needs M >= n*J
  // q[i][j]: prime for progression i at step j (0-based); explicit or from
  // prime_sequence.
  std::vector<std::vector<std::int64_t>> q;
  std::optional<Rational> sprec;  // exact construction when absent
  enum class Modification { Base, Mod1, Mod2, Mod3 } modification =
      Modification::Base;
  int generators = 1;  // Mod3: number of formal independent symbols r_l

  std::int64_t frob_power() const {
    std::int64_t P = 1;
    for (int i = 0; i < n; ++i) P *= p;
    return P;
  }

  // Hard errors for malformed tables; growth violations at the last step are
  // tolerated and reported (that prime only enters partial sums, not roots).
  void validate() const;
  std::vector<std::string> growth_flags() const;
  std::int64_t denom_cap() const;
};

bool is_prime(std::int64_t x);

// Smallest admissible primes: q > p^(j+n), pairwise distinct across all
// progressions, assigned level by level.
std::vector<std::vector<std::int64_t>> prime_sequence(std::int64_t p, int n,
                                                      int i_count,
                                                      int j_count);

struct XiTower {
  ConstructionParams params;
  std::vector<HahnSeries> xi;  // xi[j] is xi_(j+1), j = 0..J-1

  const HahnSeries& xi_at(int j) const;  // 1-based
  // sum_i t^i s^(-P/q_(i,j)) subtracted before the j-th root, 1-based j.
  HahnSeries twist_term(int j) const;
  HahnSeries x_elem() const;  // s^(-1)
  std::vector<std::int64_t> support_sizes() const;
};

XiTower build_xi_tower(const ConstructionParams& params);

// Exact reconstruction xi_j = xi_(j+1)^P + twist_term(j), 1-based j < J.
bool tower_recursion_holds(const XiTower& tower, int j);

// a_k = sum_(j<=k) xi_j and the depth-k partial sum of the x_i limit.
HahnSeries pseudo_limit_a(const XiTower& tower, int k);
HahnSeries x1_partial(const XiTower& tower, int progression, int k);

// Both partial sums at depth k, validated as pseudo-convergent prefixes
// (strictly increasing gamma sequences) on the way out.
std::pair<HahnSeries, HahnSeries> pseudo_limit_partials(const XiTower& tower,
                                                        int k,
                                                        int progression = 0);

// w(a_k^p - a_k - (x - t x1^p)) with x = s^(-1) and x1 the depth-K partial;
// equals -1/p^k for the base construction. K defaults to the tower depth.
Value telescope_check(const XiTower& tower, int k, std::optional<int> K = {});

// Membership reports for the value groups seen at each stage.
class ValueGroup {
 public:
  enum class Stage { L1, TowerLevel, L2Limit, AdjoinedRoots };

  static ValueGroup l1(std::int64_t p);
  static ValueGroup tower_level(std::int64_t p, int n, int level_j);
  static ValueGroup l2_limit(std::int64_t p, int n, int J);
  static ValueGroup adjoined_roots(std::vector<std::int64_t> primes);

  Stage stage() const { return stage_; }
  bool contains(const Rational& r) const;
  std::string description() const;

 private:
  ValueGroup() = default;
  Stage stage_ = Stage::L1;
  std::int64_t p_ = 2;
  int pcap_ = 0;  // admissible exponent of p in denominators
  std::vector<std::int64_t> primes_;
};

ValueGroup value_group_report(const ConstructionParams& params,
                              ValueGroup::Stage stage, int level_j = 0,
                              int progression = 0);

// A candidate (y, x_0..x_m) for x = y + x_0^P - x_0 + sum c_i x_i^P with
// w(y) >= 0, run through the refutation pipeline: precondition, exactness,
// deviation detection, the valuation chain, and the residue obstruction.
struct TwistCandidate {
  HahnSeries y;
  std::vector<HahnSeries> xs;  // x_0..x_m
};

struct TwistStep {
  std::string name;
  std::string detail;
  bool fired = false;  // this step refutes the candidate
};

struct TwistReport {
  enum class Verdict {
    RefutedPrecondition,
    RefutedNonExact,
    RefutedChain,
    RefutedResidue,
    UnrefutedAtDepth,
  };
  Verdict verdict = Verdict::UnrefutedAtDepth;
  std::vector<TwistStep> steps;

  std::string verdict_name() const;
};

TwistReport twist_obstruction_check(const XiTower& tower,
                                    const TwistCandidate& cand, int k_lo,
                                    int k_hi);

// Mod3 runs the construction once per formal generator with globally
// disjoint primes; exponents across generators never interact.
struct Construction {
  ConstructionParams params;
  std::vector<XiTower> towers;  // one per generator
};

Construction build_construction(const ConstructionParams& params);

}  // namespace valfield
