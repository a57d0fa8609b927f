#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "valfield/pdsum.hpp"
#include "valfield/poly.hpp"

namespace valfield {

inline Value field_val(const LaurentSeries& x) { return x.val(); }
inline Value field_val(const HahnSeries& x) { return x.sval(); }

inline Rational rat_ceil(const Rational& q) {
  return Rational(-(-q).floor());
}

// Closed ball B_gamma(a) = {x : v(a - x) >= gamma}.
template <class F>
struct Ball {
  F center;
  Value radius;

  bool contains(const F& x) const {
    return Value::geq(field_val(center - x), radius);
  }
};

enum class BallRelation { Disjoint, Subset, Superset, Equal };

// Two balls intersect iff one contains the other; bigger radius = smaller
// ball.
template <class F>
BallRelation compare_balls(const Ball<F>& a, const Ball<F>& b) {
  Value d = field_val(a.center - b.center);
  const Value& small =
      Value::cmp(a.radius, b.radius) <= 0 ? a.radius : b.radius;
  if (Value::lt(d, small)) return BallRelation::Disjoint;
  auto c = Value::cmp(a.radius, b.radius);
  if (c > 0) return BallRelation::Subset;
  if (c < 0) return BallRelation::Superset;
  return BallRelation::Equal;
}

// Strictly shrinking chain, largest ball first.
template <class F>
struct Nest {
  std::vector<Ball<F>> balls;

  void validate() const {
    for (size_t i = 0; i + 1 < balls.size(); ++i) {
      BallRelation r = compare_balls(balls[i], balls[i + 1]);
      if (r != BallRelation::Superset)
        fail(ErrorCode::BadArgument,
             "nest must be strictly decreasing by inclusion");
    }
  }
};

// Union over a nest; finitely many balls here, so the union is the outer
// ball but the nest structure is kept.
template <class F>
struct GeneralizedBall {
  std::vector<Ball<F>> nest;  // largest first

  const Ball<F>& outer() const {
    if (nest.empty()) fail(ErrorCode::BadArgument, "empty generalized ball");
    return nest.front();
  }
  bool contains(const F& x) const { return outer().contains(x); }
};

struct PreimageResult {
  std::vector<GeneralizedBall<LaurentSeries>> balls;
  std::vector<LaurentSeries> roots;  // roots of f - c used as centers
};

// f^(-1)(B'): at most deg f pairwise disjoint balls, each around a root of
// f - center. Additive f goes through the kernel machinery; other
// polynomials need a full simple split over F_p((t)).
PreimageResult poly_preimage_ball(const GeneralPoly<LaurentSeries>& f,
                                  const Ball<LaurentSeries>& ball,
                                  std::int64_t prec);

// Preimage of a nest, grouped into at most deg f nests by comparability.
std::vector<Nest<LaurentSeries>> preimage_nest(
    const GeneralPoly<LaurentSeries>& f, const Nest<LaurentSeries>& nest,
    std::int64_t prec);

struct ApproxResult {
  LaurentSeries y;    // best approximant found in the polygroup
  Value distance;     // v(z - y); AtLeast(-) when the budget ran out
  std::vector<LaurentSeries> parts;  // arguments x_i with y = sum f_i(x_i)
  std::string certificate;
};

// Nearest point of the polygroup sum f_0(K) + ... + f_n(K) to z. The
// (X^p - X, t X^p, ..., t^(p-1) X^p) shape is decided through the henselian
// decomposition (distance 0 or inf); other specs run a graded greedy
// cancellation over leading forms and stop at the first uncancellable level.
ApproxResult optimal_approx(const LaurentSeries& z, const PolygroupSpec& spec,
                            std::int64_t depth_budget);

// The shrinking chain of balls around strictly improving approximants.
// Errors AttainedMaximum when the maximum is attained (always, for the
// decided shape); the chain exists only while improvements keep coming.
Nest<LaurentSeries> nest_from_nonoptimal(const LaurentSeries& z,
                                         const PolygroupSpec& spec, int steps,
                                         std::int64_t depth_budget);

// --- pseudo-convergent prefixes -------------------------------------------

// gamma_nu = v(a_(nu+1) - a_nu); strictly increasing and finite, else
// NotPseudoConvergent.
template <class F>
std::vector<Value> pcseq_gammas(const std::vector<F>& a) {
  if (a.size() < 2)
    fail(ErrorCode::BadArgument, "prefix needs at least two terms");
  std::vector<Value> g;
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    Value v = field_val(a[i + 1] - a[i]);
    if (!v.is_finite())
      fail(ErrorCode::NotPseudoConvergent,
           "consecutive difference has value " + v.str());
    g.push_back(v);
  }
  for (size_t i = 0; i + 1 < g.size(); ++i)
    if (!Value::lt(g[i], g[i + 1]))
      fail(ErrorCode::NotPseudoConvergent,
           "gamma sequence is not strictly increasing");
  return g;
}

template <class F>
bool pcseq_is_limit(const F& b, const std::vector<F>& a) {
  std::vector<Value> g = pcseq_gammas(a);
  for (size_t i = 0; i < g.size(); ++i)
    if (!Value::eq(field_val(b - a[i]), g[i])) return false;
  return true;
}

// Indices are 1-based. When b fails to be a limit at mu, every later term
// stays at distance below gamma_ref (the witness inequality, checked on the
// available prefix).
struct NonLimitWitness {
  bool is_limit_so_far = false;
  size_t nu0 = 0;          // mu + 2
  size_t gamma_ref = 0;    // index of the gamma used for the bound
  bool inequality_holds = false;
};

template <class F>
NonLimitWitness pcseq_non_limit_witness(const F& b, const std::vector<F>& a) {
  std::vector<Value> g = pcseq_gammas(a);
  size_t mu = 0;
  bool found = false;
  for (size_t i = 0; i < g.size(); ++i) {
    if (!Value::eq(field_val(b - a[i]), g[i])) {
      mu = i + 1;  // 1-based
      found = true;
      break;
    }
  }
  if (!found) return {true, 0, 0, false};
  NonLimitWitness w;
  w.nu0 = mu + 2;
  w.gamma_ref = std::min(w.nu0, g.size());  // 1-based gamma index
  w.inequality_holds = true;
  for (size_t nu = w.nu0; nu <= a.size(); ++nu) {
    Value d = field_val(b - a[nu - 1]);
    if (!Value::lt(d, g[w.gamma_ref - 1])) w.inequality_holds = false;
  }
  return w;
}

// Whether v(f(a_nu)) settles on a constant tail. Verdicts are observational:
// they carry the prefix length.
struct ValueFixingReport {
  bool fixed = false;
  Value value = Value::infinity();
  size_t from_index = 0;  // 1-based start of the constant tail
  std::vector<Value> observed;
  size_t prefix_len = 0;
};

template <class F>
ValueFixingReport value_fixing_report(const GeneralPoly<F>& f,
                                      const std::vector<F>& a) {
  pcseq_gammas(a);  // validates the prefix
  ValueFixingReport r;
  r.prefix_len = a.size();
  for (const F& t : a) r.observed.push_back(field_val(f.eval(t)));
  size_t tail = r.observed.size() - 1;
  while (tail > 0 && Value::eq(r.observed[tail - 1], r.observed[tail])) --tail;
  if (tail + 1 < r.observed.size() || r.observed.size() == 1) {
    r.fixed = true;
    r.value = r.observed.back();
    r.from_index = tail + 1;
  }
  return r;
}

}  // namespace valfield
