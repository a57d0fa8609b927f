#include "valfield/construction.hpp"

#include <algorithm>

namespace valfield {

bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

void ConstructionParams::validate() const {
  require_prime(p);
  if (n < 1) fail(ErrorCode::BadArgument, "n must be >= 1");
  if (J < 1) fail(ErrorCode::BadArgument, "J must be >= 1");
  if (m < 1 || static_cast<std::int64_t>(m) > frob_power() - 1)
    fail(ErrorCode::BadArgument, "need 1 <= m <= p^n - 1");
  if (M < n * J)
    fail(ErrorCode::RootDepthExceeded,
         "root depth M must be at least n*J = " + std::to_string(n * J));
  if (generators < 1) fail(ErrorCode::BadArgument, "generators must be >= 1");
  int rows = m * (modification == Modification::Mod3 ? generators : 1);
  if (static_cast<int>(q.size()) != rows)
    fail(ErrorCode::BadArgument,
         "prime table needs " + std::to_string(rows) + " progressions");
  std::vector<std::int64_t> seen;
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(q[i].size()) != J)
      fail(ErrorCode::BadArgument, "each progression needs J primes");
    for (int j = 0; j < J; ++j) {
      std::int64_t qq = q[i][j];
      if (!is_prime(qq) || qq == p)
        fail(ErrorCode::BadArgument,
             std::to_string(qq) + " is not a prime distinct from p");
      if (std::find(seen.begin(), seen.end(), qq) != seen.end())
        fail(ErrorCode::BadArgument,
             "primes must be pairwise distinct; " + std::to_string(qq) +
                 " repeats");
      seen.push_back(qq);
      // growth p^(j+n) < q is a hard requirement wherever the prime feeds a
      // root step (j < J-1, 0-based); the last prime only enters partial sums
      std::int64_t bound = 1;
      for (int e = 0; e < j + 1 + n; ++e) bound *= p;
      if (j < J - 1 && bound >= qq)
        fail(ErrorCode::BadArgument,
             "growth condition fails: p^" + std::to_string(j + 1 + n) +
                 " >= " + std::to_string(qq));
    }
  }
  denom_cap();  // overflow check
}

std::vector<std::string> ConstructionParams::growth_flags() const {
  std::vector<std::string> flags;
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q[i].size(); ++j) {
      std::int64_t bound = 1;
      for (size_t e = 0; e < j + 1 + static_cast<size_t>(n); ++e) bound *= p;
      if (bound >= q[i][j])
        flags.push_back("q[" + std::to_string(i) + "][" + std::to_string(j) +
                        "] = " + std::to_string(q[i][j]) +
                        " misses the growth bound p^" +
                        std::to_string(j + 1 + static_cast<size_t>(n)) + " = " +
                        std::to_string(bound) +
                        " (tolerated: it feeds no root step)");
    }
  return flags;
}

std::int64_t ConstructionParams::denom_cap() const {
  __int128 cap = 1;
  for (int e = 0; e < n * J; ++e) cap *= p;
  for (const auto& row : q)
    for (std::int64_t qq : row) {
      cap *= qq;
      if (cap > 1'000'000'000'000'000LL)
        fail(ErrorCode::DenominatorCapExceeded,
             "exponent denominator bound overflows the construction budget");
    }
  return static_cast<std::int64_t>(cap);
}

std::vector<std::vector<std::int64_t>> prime_sequence(std::int64_t p, int n,
                                                      int i_count,
                                                      int j_count) {
  require_prime(p);
  std::vector<std::vector<std::int64_t>> q(
      static_cast<size_t>(i_count),
      std::vector<std::int64_t>(static_cast<size_t>(j_count), 0));
  std::int64_t last = 1;
  for (int j = 0; j < j_count; ++j) {
    std::int64_t bound = 1;
    for (int e = 0; e < j + 1 + n; ++e) bound *= p;
    for (int i = 0; i < i_count; ++i) {
      std::int64_t cand = std::max(bound, last) + 1;
      while (!is_prime(cand) || cand == p) ++cand;
      q[static_cast<size_t>(i)][static_cast<size_t>(j)] = cand;
      last = cand;
    }
  }
  return q;
}

const HahnSeries& XiTower::xi_at(int j) const {
  if (j < 1 || j > static_cast<int>(xi.size()))
    fail(ErrorCode::BadArgument, "tower level out of range");
  return xi[static_cast<size_t>(j - 1)];
}

HahnSeries XiTower::twist_term(int j) const {
  const std::int64_t P = params.frob_power();
  HahnSeries acc = HahnSeries::zero(params.p, params.M, params.denom_cap());
  for (int i = 1; i <= params.m; ++i)
    acc = acc + HahnSeries::t_monomial(
                    params.p, params.M, 1, Rational(i),
                    Rational(-P, params.q[static_cast<size_t>(i - 1)]
                                         [static_cast<size_t>(j - 1)]),
                    params.denom_cap());
  return acc;
}

HahnSeries XiTower::x_elem() const {
  return HahnSeries::term(params.p, params.M, Rational(-1),
                          LaurentSeries::one(params.p), params.denom_cap());
}

std::vector<std::int64_t> XiTower::support_sizes() const {
  std::vector<std::int64_t> out;
  for (const auto& x : xi)
    out.push_back(static_cast<std::int64_t>(x.terms().size()));
  return out;
}

XiTower build_xi_tower(const ConstructionParams& params) {
  params.validate();
  if (params.modification == ConstructionParams::Modification::Mod3 &&
      params.generators > 1)
    fail(ErrorCode::BadArgument,
         "build_xi_tower builds one tower; use build_construction for Mod3");
  XiTower tower;
  tower.params = params;
  const std::int64_t P = params.frob_power();
  HahnSeries cur =
      HahnSeries::term(params.p, params.M, Rational(-1, P),
                       LaurentSeries::one(params.p), params.denom_cap());
  tower.xi.push_back(cur);
  for (int j = 1; j < params.J; ++j) {
    // The j-th root step needs -1/p^(nj) < -p^n/q, i.e. q > p^(n(j+1)).
    // At n = 1 this is the growth condition itself; at higher levels the
    // stated growth bound is weaker than what the recursion needs, so the
    // effective bound is enforced here.
    __int128 need = 1;
    for (int e = 0; e < params.n * (j + 1); ++e) need *= params.p;
    for (int i = 0; i < params.m; ++i) {
      std::int64_t qq =
          params.q[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
      if (need >= qq)
        fail(ErrorCode::BadArgument,
             "tower step " + std::to_string(j) + " needs q > p^" +
                 std::to_string(params.n * (j + 1)) + ", got q = " +
                 std::to_string(qq));
    }
    HahnSeries inner = tower.xi.back() - tower.twist_term(j);
    tower.xi.push_back(inner.pth_root(params.n));
  }
  // The two tower invariants are part of the contract; check them here.
  for (int j = 1; j <= params.J; ++j) {
    Rational expect(-1);
    for (int e = 0; e < params.n * j; ++e) expect = expect / Rational(params.p);
    if (!(tower.xi_at(j).sval() == Value::finite(expect)))
      fail(ErrorCode::PreconditionFailed,
           "tower value invariant failed at level " + std::to_string(j));
    if (j < params.J && !tower_recursion_holds(tower, j))
      fail(ErrorCode::PreconditionFailed,
           "tower recursion invariant failed at level " + std::to_string(j));
  }
  return tower;
}

bool tower_recursion_holds(const XiTower& tower, int j) {
  const HahnSeries& lhs = tower.xi_at(j);
  HahnSeries rhs =
      tower.xi_at(j + 1).frobenius(tower.params.n) + tower.twist_term(j);
  return lhs == rhs;
}

HahnSeries pseudo_limit_a(const XiTower& tower, int k) {
  if (k < 1 || k > tower.params.J)
    fail(ErrorCode::BadArgument, "k out of tower range");
  HahnSeries acc =
      HahnSeries::zero(tower.params.p, tower.params.M, tower.params.denom_cap());
  for (int j = 1; j <= k; ++j) acc = acc + tower.xi_at(j);
  return acc;
}

HahnSeries x1_partial(const XiTower& tower, int progression, int k) {
  const auto& params = tower.params;
  if (progression < 0 || progression >= static_cast<int>(params.q.size()))
    fail(ErrorCode::BadArgument, "progression out of range");
  if (k < 1 || k > params.J) fail(ErrorCode::BadArgument, "k out of range");
  HahnSeries acc = HahnSeries::zero(params.p, params.M, params.denom_cap());
  for (int j = 1; j <= k; ++j)
    acc = acc +
          HahnSeries::term(
              params.p, params.M,
              Rational(-1, params.q[static_cast<size_t>(progression)]
                                   [static_cast<size_t>(j - 1)]),
              LaurentSeries::one(params.p), params.denom_cap());
  return acc;
}

std::pair<HahnSeries, HahnSeries> pseudo_limit_partials(const XiTower& tower,
                                                        int k,
                                                        int progression) {
  HahnSeries a = pseudo_limit_a(tower, k);
  HahnSeries x1 = x1_partial(tower, progression, k);
  if (k >= 2) {
    // gamma sequences must increase strictly; anything else is a broken tower
    auto check = [&](auto partial_at) {
      std::optional<Rational> prev;
      for (int j = 1; j < k; ++j) {
        Value g = (partial_at(j + 1) - partial_at(j)).sval();
        Rational gq = g.finite_amount();
        if (prev && !(*prev < gq))
          fail(ErrorCode::NotPseudoConvergent,
               "partial sums do not form a pseudo-convergent prefix");
        prev = gq;
      }
    };
    check([&](int j) { return pseudo_limit_a(tower, j); });
    check([&](int j) { return x1_partial(tower, progression, j); });
  }
  return {std::move(a), std::move(x1)};
}

Value telescope_check(const XiTower& tower, int k, std::optional<int> K) {
  const auto& params = tower.params;
  if (params.n != 1 || params.m != 1)
    fail(ErrorCode::BadArgument,
         "the telescoping identity is computed for the base construction");
  int depth = K.value_or(params.J);
  if (k < 1 || k > params.J || depth < k)
    fail(ErrorCode::BadArgument, "need 1 <= k <= J and K >= k");
  HahnSeries a = pseudo_limit_a(tower, k);
  HahnSeries x1 = x1_partial(tower, 0, depth);
  HahnSeries t_coeff = HahnSeries::t_monomial(params.p, params.M, 1,
                                              Rational(1), Rational(0),
                                              params.denom_cap());
  HahnSeries expr = a.frobenius(1) - a -
                    (tower.x_elem() - t_coeff * x1.frobenius(1));
  return expr.sval();
}

ValueGroup ValueGroup::l1(std::int64_t p) {
  ValueGroup g;
  g.stage_ = Stage::L1;
  g.p_ = p;
  g.pcap_ = 0;
  return g;
}

ValueGroup ValueGroup::tower_level(std::int64_t p, int n, int level_j) {
  ValueGroup g;
  g.stage_ = Stage::TowerLevel;
  g.p_ = p;
  g.pcap_ = n * level_j;
  return g;
}

ValueGroup ValueGroup::l2_limit(std::int64_t p, int n, int J) {
  ValueGroup g;
  g.stage_ = Stage::L2Limit;
  g.p_ = p;
  g.pcap_ = n * J;
  return g;
}

ValueGroup ValueGroup::adjoined_roots(std::vector<std::int64_t> primes) {
  ValueGroup g;
  g.stage_ = Stage::AdjoinedRoots;
  g.primes_ = std::move(primes);
  return g;
}

bool ValueGroup::contains(const Rational& r) const {
  std::int64_t den = r.den();
  if (stage_ == Stage::AdjoinedRoots) {
    // sum of (1/q)Z over the progression: squarefree products of its primes
    for (std::int64_t q : primes_) {
      if (den % q == 0) {
        den /= q;
        if (den % q == 0) return false;  // q^2 never divides
      }
    }
    return den == 1;
  }
  int a = 0;
  while (den % p_ == 0) {
    den /= p_;
    ++a;
  }
  return a <= pcap_;  // p-free part is free: 1/n lies in L1 for (n,p)=1
}

std::string ValueGroup::description() const {
  switch (stage_) {
    case Stage::L1:
      return "sum of (1/n)Z over n coprime to " + std::to_string(p_) +
             "; membership: denominator coprime to p";
    case Stage::TowerLevel:
      return "L1 group + (1/p^" + std::to_string(pcap_) +
             ")Z; membership: p-part of denominator at most p^" +
             std::to_string(pcap_);
    case Stage::L2Limit:
      return "union over j <= J of the level-j groups (finite-depth stand-in; "
             "the full union is all of Q); membership: p-part at most p^" +
             std::to_string(pcap_);
    case Stage::AdjoinedRoots: {
      std::string s = "sum of (1/q)Z over q in {";
      for (size_t i = 0; i < primes_.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(primes_[i]);
      }
      return s + "}; membership: squarefree denominator over these primes";
    }
  }
  return "";
}

ValueGroup value_group_report(const ConstructionParams& params,
                              ValueGroup::Stage stage, int level_j,
                              int progression) {
  switch (stage) {
    case ValueGroup::Stage::L1:
      return ValueGroup::l1(params.p);
    case ValueGroup::Stage::TowerLevel:
      return ValueGroup::tower_level(params.p, params.n, level_j);
    case ValueGroup::Stage::L2Limit:
      return ValueGroup::l2_limit(params.p, params.n, params.J);
    case ValueGroup::Stage::AdjoinedRoots:
      if (progression < 0 || progression >= static_cast<int>(params.q.size()))
        fail(ErrorCode::BadArgument, "progression out of range");
      return ValueGroup::adjoined_roots(
          params.q[static_cast<size_t>(progression)]);
  }
  fail(ErrorCode::BadArgument, "unknown stage");
}

std::string TwistReport::verdict_name() const {
  switch (verdict) {
    case Verdict::RefutedPrecondition: return "refuted-precondition";
    case Verdict::RefutedNonExact: return "refuted-non-exact";
    case Verdict::RefutedChain: return "refuted-chain";
    case Verdict::RefutedResidue: return "refuted-residue";
    case Verdict::UnrefutedAtDepth: return "unrefuted-at-depth";
  }
  return "";
}

namespace {

// Quotient through the geometric series against the leading term, reported
// to rel_target relative s-precision.
HahnSeries hahn_div(const HahnSeries& a, const HahnSeries& b,
                    const Rational& rel_target) {
  if (b.terms().empty())
    fail(ErrorCode::DivisionByZero, "division by a series without lead");
  const auto& lead = b.terms().front();
  LaurentSeries inv_coeff = lead.coeff.inverse(64);
  HahnSeries lead_inv =
      HahnSeries::term(b.prime(), b.root_depth(), -lead.sexp, inv_coeff,
                       b.denom_cap());
  HahnSeries u = b * lead_inv - HahnSeries::one(b.prime(), b.root_depth(),
                                                b.denom_cap());
  // v_s(u) > 0; sum (-u)^k converges past the target
  HahnSeries acc = HahnSeries::one(b.prime(), b.root_depth(), b.denom_cap())
                       .truncated(rel_target);
  HahnSeries pw = acc;
  HahnSeries neg_u = -u;
  while (!pw.is_zero_to_prec()) {
    pw = (pw * neg_u).truncated(rel_target);
    acc = acc + pw;
  }
  return a * lead_inv * acc;
}

bool laurent_is_pth_power(const LaurentSeries& x, std::int64_t p) {
  for (const auto& t : x.terms())
    if (floor_mod(t.exp, p) != 0) return false;
  return true;
}

}  // namespace

TwistReport twist_obstruction_check(const XiTower& tower,
                                    const TwistCandidate& cand, int k_lo,
                                    int k_hi) {
  const auto& params = tower.params;
  const std::int64_t p = params.p;
  const std::int64_t P = params.frob_power();
  TwistReport rep;
  auto step = [&](std::string name, std::string detail, bool fired) {
    rep.steps.push_back({std::move(name), std::move(detail), fired});
  };

  if (static_cast<int>(cand.xs.size()) != params.m + 1)
    fail(ErrorCode::BadArgument, "candidate needs x_0..x_m");
  if (k_lo < 1 || k_hi > params.J || k_lo > k_hi)
    fail(ErrorCode::BadArgument, "k range outside the tower depth");

  // 1. w(y) >= 0
  Value wy = cand.y.sval();
  bool pre_ok;
  try {
    pre_ok = !Value::lt(wy, Value::finite(Rational(0)));
  } catch (const Error&) {
    fail(ErrorCode::DepthInsufficient,
         "w(y) undecidable at the candidate's precision");
  }
  step("precondition w(y) >= 0", "w(y) = " + wy.str(), !pre_ok);
  if (!pre_ok) {
    rep.verdict = TwistReport::Verdict::RefutedPrecondition;
    return rep;
  }

  // 2. exactness of x = y + x_0^P - x_0 + sum c_i x_i^P
  HahnSeries rhs = cand.y + cand.xs[0].frobenius(params.n) - cand.xs[0];
  for (int i = 1; i <= params.m; ++i)
    rhs = rhs + HahnSeries::t_monomial(p, params.M, 1, Rational(i),
                                       Rational(0), params.denom_cap()) *
                    cand.xs[static_cast<size_t>(i)].frobenius(params.n);
  HahnSeries E = tower.x_elem() - rhs;
  const bool exact = E.is_exactly_zero();
  step("exact representation", "w(x - rhs) = " + E.sval().str(), !exact);

  // 3. deviation detection per progression: w(x_i - partial_k) < -1/q_(i,k0+1)
  int k0 = -1;
  int dev_i = 1;
  for (int i = 1; i <= params.m && k0 < 0; ++i) {
    for (int kk = k_lo; kk <= k_hi && k0 < 0; ++kk) {
      bool all = true;
      for (int k = kk; k <= k_hi; ++k) {
        HahnSeries dev =
            cand.xs[static_cast<size_t>(i)] - x1_partial(tower, i - 1, k);
        Value wd = dev.sval();
        Rational bound =
            kk < params.J
                ? Rational(-1, params.q[static_cast<size_t>(i - 1)]
                                       [static_cast<size_t>(kk)])
                : Rational(-1, params.q[static_cast<size_t>(i - 1)]
                                       [static_cast<size_t>(params.J - 1)]);
        try {
          if (!Value::lt(wd, Value::finite(bound))) all = false;
        } catch (const Error&) {
          all = false;
        }
      }
      if (all) {
        k0 = kk;
        dev_i = i;
      }
    }
  }
  if (k0 < 0) {
    step("deviation detection",
         "no index k0 with w(x_i - partial_k) < -1/q_(i,k0+1) on the range",
         false);
    rep.verdict = exact ? TwistReport::Verdict::UnrefutedAtDepth
                        : TwistReport::Verdict::RefutedNonExact;
    return rep;
  }
  step("deviation detection",
       "progression " + std::to_string(dev_i) + " deviates from index k0 = " +
           std::to_string(k0),
       false);

  // 4. pick k with p^k > q_(dev_i, k0+1) inside the representable depth
  std::int64_t qref = k0 < params.J
                          ? params.q[static_cast<size_t>(dev_i - 1)]
                                    [static_cast<size_t>(k0)]
                          : params.q[static_cast<size_t>(dev_i - 1)]
                                    [static_cast<size_t>(params.J - 1)];
  int kpick = -1;
  std::int64_t pk = 1;
  for (int k = 1; k <= params.J; ++k) {
    pk *= P;
    if (k >= k0 && pk > qref) {
      kpick = k;
      break;
    }
  }
  if (kpick < 0) {
    step("depth selection",
         "no representable k with p^k > " + std::to_string(qref) +
             "; chain diagnostics unavailable at this depth",
         false);
    if (exact)
      fail(ErrorCode::DepthInsufficient,
           "tower depth too small for the valuation chain");
    rep.verdict = TwistReport::Verdict::RefutedNonExact;
    return rep;
  }
  step("depth selection", "k = " + std::to_string(kpick), false);

  // 5. shifted quantities and the valuation chain
  HahnSeries x0t = cand.xs[0] - pseudo_limit_a(tower, kpick);
  std::vector<HahnSeries> xt;  // x~_1..x~_m
  for (int i = 1; i <= params.m; ++i)
    xt.push_back(cand.xs[static_cast<size_t>(i)] -
                 x1_partial(tower, i - 1, kpick - 1));
  Value w1 = xt[static_cast<size_t>(dev_i - 1)].sval();
  Value wxi = tower.xi_at(kpick).sval();
  bool chain_ok = false;
  std::string chain_detail;
  try {
    Rational w1q = w1.finite_amount();
    chain_ok = Rational(P) * w1q < w1q && w1q < wxi.finite_amount() &&
               wxi.finite_amount() < Rational(0);
    chain_detail = "P*w(x~) = " + (Rational(P) * w1q).str() +
                   " < w(x~) = " + w1q.str() + " < w(xi_k) = " +
                   wxi.finite_amount().str() + " < 0: " +
                   (chain_ok ? "holds" : "fails");
  } catch (const Error&) {
    chain_detail = "chain undecidable at this precision";
  }
  step("valuation chain", chain_detail, !chain_ok);
  // Open reading: the paper states w(xi_(k+1)) < 0 next to the chain on
  // w(xi_k - y); both are computed and reported.
  {
    HahnSeries d1 = tower.xi_at(kpick) - cand.y;
    std::string both = "w(xi_k - y) = " + d1.sval().str();
    if (kpick + 1 <= params.J) {
      HahnSeries d2 = tower.xi_at(kpick + 1) - cand.y;
      both += ", w(xi_(k+1) - y) = " + d2.sval().str();
    }
    step("corrective-term values", both, false);
  }
  if (!chain_ok) {
    rep.verdict = exact ? TwistReport::Verdict::RefutedChain
                        : TwistReport::Verdict::RefutedNonExact;
    return rep;
  }

  // 6. telescoping identity on the shifted candidate (exact candidates only)
  if (exact) {
    HahnSeries lhs = x0t.frobenius(params.n) - x0t;
    HahnSeries rhs2 = tower.xi_at(kpick) - cand.y;
    for (int i = 1; i <= params.m; ++i)
      rhs2 = rhs2 - HahnSeries::t_monomial(p, params.M, 1, Rational(i),
                                           Rational(0), params.denom_cap()) *
                        xt[static_cast<size_t>(i - 1)].frobenius(params.n);
    step("telescoped identity",
         (lhs - rhs2).is_exactly_zero() ? "holds exactly" : "fails",
         false);
  }

  // 7. residue obstruction: the residue of (x~_0^P - x~_0)/x~_(i1)^P must be
  // a P-th power if the candidate were valid; the twist forbids it.
  {
    // alpha = min_i w(x~_i^P); i1 = first attaining index
    int i1 = -1;
    Value alpha = Value::infinity();
    for (int i = 1; i <= params.m; ++i) {
      Value w = xt[static_cast<size_t>(i - 1)].frobenius(params.n).sval();
      if (i1 < 0 || Value::lt(w, alpha)) {
        alpha = w;
        i1 = i;
      }
    }
    HahnSeries num = x0t.frobenius(params.n) - x0t;
    HahnSeries den = xt[static_cast<size_t>(i1 - 1)].frobenius(params.n);
    if (num.is_zero_to_prec() || den.is_zero_to_prec()) {
      step("residue obstruction",
           "shifted numerator or denominator vanishes; nothing to test",
           false);
      rep.verdict = exact ? TwistReport::Verdict::UnrefutedAtDepth
                          : TwistReport::Verdict::RefutedNonExact;
      return rep;
    }
    Rational rel = Rational(1) - num.sval().finite_amount() +
                   den.sval().finite_amount();
    HahnSeries quot = hahn_div(num, den, rel);
    // residue: coefficient at s^0
    LaurentSeries res = LaurentSeries::zero(p);
    for (const auto& t : quot.terms())
      if (t.sexp == Rational(0)) res = t.coeff;
    bool power = !res.is_zero_to_prec() && laurent_is_pth_power(res, p);
    step("residue obstruction",
         "residue of (x~_0^P - x~_0)/x~_" + std::to_string(i1) +
             "^P at s^0 is " + res.str() +
             (power ? " (a p-th power: no obstruction)"
                    : " (not a p-th power at depth: obstruction fires)"),
         !power);
    if (!power) {
      rep.verdict = exact ? TwistReport::Verdict::RefutedResidue
                          : TwistReport::Verdict::RefutedNonExact;
      return rep;
    }
  }

  rep.verdict = exact ? TwistReport::Verdict::UnrefutedAtDepth
                      : TwistReport::Verdict::RefutedNonExact;
  return rep;
}

Construction build_construction(const ConstructionParams& params) {
  params.validate();
  Construction c;
  c.params = params;
  if (params.modification != ConstructionParams::Modification::Mod3) {
    c.towers.push_back(build_xi_tower(params));
    return c;
  }
  // One tower per formal generator; each slice of m progressions is its own
  // prime table, disjoint from the others by validation.
  for (int g = 0; g < params.generators; ++g) {
    ConstructionParams sub = params;
    sub.modification = ConstructionParams::Modification::Base;
    sub.generators = 1;
    sub.q.assign(params.q.begin() + g * params.m,
                 params.q.begin() + (g + 1) * params.m);
    if (params.m > 1)
      sub.modification = ConstructionParams::Modification::Mod1;
    c.towers.push_back(build_xi_tower(sub));
  }
  return c;
}

}  // namespace valfield
