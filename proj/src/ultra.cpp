#include "valfield/ultra.hpp"

#include <algorithm>

#include "valfield/decomp.hpp"

namespace valfield {

namespace {

// Smallest integer w with min_i v(c_i) + p^i w >= gamma.
std::int64_t additive_preimage_radius(const AdditivePoly<LaurentSeries>& f,
                                      const Rational& gamma) {
  std::int64_t w = INT64_MIN / 4;
  std::int64_t q = 1;
  for (size_t i = 0; i < f.coeffs().size(); ++i, q *= f.prime()) {
    const LaurentSeries& c = f.coeffs()[i];
    if (c.is_exactly_zero()) continue;
    Rational vc = c.val().finite_amount();
    std::int64_t need = rat_ceil((gamma - vc) / Rational(q)).num();
    w = std::max(w, need);
  }
  return w;
}

void insert_disjoint(std::vector<Ball<LaurentSeries>>& acc,
                     Ball<LaurentSeries> b) {
  for (auto& existing : acc) {
    switch (compare_balls(existing, b)) {
      case BallRelation::Equal:
      case BallRelation::Superset:
        return;  // already covered
      case BallRelation::Subset:
        existing = std::move(b);  // new ball swallows the old one
        return;
      case BallRelation::Disjoint:
        break;
    }
  }
  acc.push_back(std::move(b));
}

}  // namespace

PreimageResult poly_preimage_ball(const GeneralPoly<LaurentSeries>& f,
                                  const Ball<LaurentSeries>& ball,
                                  std::int64_t prec) {
  const std::int64_t p = f.prime();
  PreimageResult out;
  const Value& gamma = ball.radius;
  if (gamma.is_unknown())
    fail(ErrorCode::BadArgument, "ball radius must be finite or inf");

  std::vector<Ball<LaurentSeries>> flat;

  if (auto add = f.as_additive()) {
    AdditiveSolveResult sol = additive_solve(*add, ball.center, prec);
    std::vector<LaurentSeries> roots = std::move(sol.roots);
    if (ball.center.is_zero_to_prec() &&
        (ball.center.is_exact() || *ball.center.prec() >= prec))
      roots.insert(roots.begin(), LaurentSeries::zero(p));
    if (roots.empty()) {
      // No solution of f(x) = c in the field. Empty preimage is certified
      // when even the best approximation misses the ball.
      if (gamma.is_infinite() || Value::lt(sol.best_achieved, gamma))
        return out;  // empty
      fail(ErrorCode::RootFindingUnsupported,
           "preimage is nonempty but f - c has no root in F_p((t))");
    }
    Value rho = gamma.is_infinite()
                    ? Value::infinity()
                    : Value::finite(Rational(additive_preimage_radius(
                          *add, gamma.finite_amount())));
    for (const auto& r : roots)
      insert_disjoint(flat, Ball<LaurentSeries>{r, rho});
    out.roots = std::move(roots);
  } else {
    // Shift the target into the constant coefficient: roots of f - c.
    std::vector<LaurentSeries> coeffs = f.coeffs();
    coeffs[0] = coeffs[0] - ball.center;
    GeneralPoly<LaurentSeries> g(p, std::move(coeffs));
    std::vector<LaurentSeries> roots = general_roots(g, prec);
    if (gamma.is_unknown() || !gamma.is_finite())
      fail(ErrorCode::BadArgument,
           "singleton preimages of non-additive maps are unsupported");
    for (const auto& r : roots) {
      // Radius from the Newton data of f shifted to the root.
      std::vector<LaurentSeries> d = taylor_shift(g, r);
      std::int64_t rho = INT64_MIN / 4;
      for (size_t j = 1; j < d.size(); ++j) {
        if (d[j].is_zero_to_prec()) continue;
        Rational vd = d[j].val().finite_amount();
        rho = std::max(
            rho, rat_ceil((gamma.finite_amount() - vd) /
                          Rational(static_cast<std::int64_t>(j)))
                     .num());
      }
      insert_disjoint(flat,
                      Ball<LaurentSeries>{r, Value::finite(Rational(rho))});
    }
    out.roots = std::move(roots);
  }

  if (static_cast<std::int64_t>(flat.size()) > f.degree())
    fail(ErrorCode::RootFindingUnsupported,
         "preimage produced more balls than deg f");
  for (auto& b : flat) out.balls.push_back(GeneralizedBall<LaurentSeries>{{b}});
  return out;
}

std::vector<Nest<LaurentSeries>> preimage_nest(
    const GeneralPoly<LaurentSeries>& f, const Nest<LaurentSeries>& nest,
    std::int64_t prec) {
  nest.validate();
  std::vector<Ball<LaurentSeries>> pool;
  for (const auto& b : nest.balls) {
    PreimageResult pr = poly_preimage_ball(f, b, prec);
    for (const auto& gb : pr.balls) pool.push_back(gb.outer());
  }

  // Group by comparability: balls meeting some group member join the group.
  std::vector<std::vector<Ball<LaurentSeries>>> groups;
  for (const auto& b : pool) {
    bool placed = false;
    for (auto& g : groups) {
      for (const auto& member : g)
        if (compare_balls(member, b) != BallRelation::Disjoint) {
          g.push_back(b);
          placed = true;
          break;
        }
      if (placed) break;
    }
    if (!placed) groups.push_back({b});
  }

  std::vector<Nest<LaurentSeries>> out;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end(),
              [](const Ball<LaurentSeries>& a, const Ball<LaurentSeries>& b) {
                return Value::lt(a.radius, b.radius);
              });
    std::vector<Ball<LaurentSeries>> chain;
    for (auto& b : g)
      if (chain.empty() ||
          compare_balls(chain.back(), b) == BallRelation::Superset)
        chain.push_back(b);
    out.push_back(Nest<LaurentSeries>{std::move(chain)});
  }

  if (static_cast<std::int64_t>(out.size()) > f.degree())
    fail(ErrorCode::RootFindingUnsupported,
         "preimage nest count exceeds deg f");
  return out;
}

namespace {

struct Generator {
  size_t poly_index;
  std::int64_t u;      // argument level
  Fp alpha;            // leading-form multiplier
};

// Generators whose image can have leading level w, with their F_p multiplier.
std::vector<Generator> level_generators(const PolygroupSpec& spec,
                                        std::int64_t w) {
  std::vector<Generator> gens;
  for (size_t i = 0; i < spec.fs.size(); ++i) {
    const auto& f = spec.fs[i];
    std::int64_t q = 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> monos;  // (p^k, v(c_k))
    std::vector<Fp> leads;
    for (size_t k = 0; k < f.coeffs().size(); ++k, q *= spec.p) {
      const auto& c = f.coeffs()[k];
      if (c.is_exactly_zero()) continue;
      monos.push_back({q, c.val().finite_amount().num()});
      leads.push_back(c.leading_coeff());
    }
    // at most one u with min_k (v(c_k) + p^k u) == w
    for (size_t k = 0; k < monos.size(); ++k) {
      std::int64_t diff = w - monos[k].second;
      if (diff % monos[k].first != 0) continue;
      std::int64_t u = diff / monos[k].first;
      std::int64_t mn = LaurentSeries::kInfExp;
      for (auto& [pk, vc] : monos) mn = std::min(mn, vc + pk * u);
      if (mn != w) continue;
      Fp alpha(0, spec.p);
      for (size_t k2 = 0; k2 < monos.size(); ++k2)
        if (monos[k2].second + monos[k2].first * u == w)
          alpha = alpha + leads[k2];  // map a -> alpha * a on F_p
      gens.push_back({i, u, alpha});
      break;
    }
  }
  return gens;
}

}  // namespace

ApproxResult optimal_approx(const LaurentSeries& z, const PolygroupSpec& spec,
                            std::int64_t depth_budget) {
  const std::int64_t p = spec.p;

  // Decided shape: (X^p - X, t X^p, ..., t^(p-1) X^p).
  auto twists = spec.twist_shape();
  bool decided_shape = false;
  if (twists && spec.level == 1 &&
      static_cast<std::int64_t>(twists->size()) == p - 1) {
    decided_shape = true;
    for (std::int64_t i = 1; i < p; ++i)
      if (!((*twists)[static_cast<size_t>(i - 1)] ==
            LaurentSeries::monomial(p, 1, i)))
        decided_shape = false;
  }
  if (decided_shape) {
    ASDecomposition d = as_decompose_henselian(z, 1, depth_budget);
    ApproxResult r{.y = z, .distance = Value::infinity()};
    r.parts = d.parts;
    if (d.j == 0) {
      r.y = z;
      r.distance = Value::infinity();
      r.certificate = "z decomposes with j = 0; z lies in the polygroup";
      return r;
    }
    r.y = z - LaurentSeries::monomial(p, d.j, 0);
    r.distance = Value::finite(Rational(0));
    // Certify the obstruction at level 0: no leading form reaches the
    // residue class of j.
    for (const Generator& g : level_generators(spec, 0))
      if (!g.alpha.is_zero())
        fail(ErrorCode::PreconditionFailed,
             "level-0 obstruction expected but a generator hits it");
    r.certificate =
        "level 0 obstruction: residue " + std::to_string(d.j) +
        " is outside the polygroup's leading forms";
    return r;
  }

  // Graded greedy cancellation.
  ApproxResult r{.y = LaurentSeries::zero(p), .distance = Value::infinity()};
  r.parts.assign(spec.fs.size(), LaurentSeries::zero(p));
  LaurentSeries rem = z;
  while (true) {
    if (rem.is_zero_to_prec()) {
      if (rem.is_exact()) {
        r.distance = Value::infinity();
        r.certificate = "remainder vanished exactly";
      } else {
        r.distance = Value::at_least(Rational(*rem.prec()));
        r.certificate = "remainder vanished to input precision";
      }
      return r;
    }
    std::int64_t w = rem.val().finite_amount().num();
    if (w >= depth_budget) {
      r.distance = Value::at_least(Rational(w));
      r.certificate = "depth budget exhausted";
      return r;
    }
    std::vector<Generator> gens = level_generators(spec, w);
    Fp target = rem.leading_coeff();
    // Lexicographically smallest solution: load the last usable generator.
    const Generator* chosen = nullptr;
    for (const auto& g : gens)
      if (!g.alpha.is_zero()) chosen = &g;
    if (chosen == nullptr) {
      r.distance = Value::finite(Rational(w));
      r.certificate = "level " + std::to_string(w) +
                      ": no leading form hits the obstruction";
      return r;
    }
    Fp a = target / chosen->alpha;
    LaurentSeries arg = LaurentSeries::monomial(p, a.value(), chosen->u);
    r.parts[chosen->poly_index] = r.parts[chosen->poly_index] + arg;
    LaurentSeries img = spec.fs[chosen->poly_index].eval(arg);
    r.y = r.y + img;
    rem = rem - img;
  }
}

Nest<LaurentSeries> nest_from_nonoptimal(const LaurentSeries& z,
                                         const PolygroupSpec& spec, int steps,
                                         std::int64_t depth_budget) {
  const std::int64_t p = spec.p;
  if (steps < 1) fail(ErrorCode::BadArgument, "steps must be >= 1");

  {
    // Attainment is decided outright for the decided shape and for z = 0.
    ApproxResult probe = optimal_approx(z, spec, depth_budget);
    if (probe.distance.is_infinite() || probe.distance.is_finite())
      fail(ErrorCode::AttainedMaximum,
           "optimal approximation is attained: distance " +
               probe.distance.str());
  }

  // Re-run the greedy loop, collecting one ball per strict improvement.
  Nest<LaurentSeries> nest;
  LaurentSeries y = LaurentSeries::zero(p);
  LaurentSeries rem = z;
  while (static_cast<int>(nest.balls.size()) < steps) {
    if (rem.is_zero_to_prec())
      fail(ErrorCode::BadArgument,
           "input precision exhausted before the requested steps");
    std::int64_t w = rem.val().finite_amount().num();
    if (w >= depth_budget)
      fail(ErrorCode::BadArgument,
           "depth budget exhausted before the requested steps");
    std::vector<Generator> gens = level_generators(spec, w);
    const Generator* chosen = nullptr;
    for (const auto& g : gens)
      if (!g.alpha.is_zero()) chosen = &g;
    if (chosen == nullptr)
      fail(ErrorCode::AttainedMaximum,
           "maximum attained at level " + std::to_string(w));
    Fp a = rem.leading_coeff() / chosen->alpha;
    LaurentSeries img = spec.fs[chosen->poly_index].eval(
        LaurentSeries::monomial(p, a.value(), chosen->u));
    y = y + img;
    rem = rem - img;
    Value dist = rem.is_zero_to_prec() ? Value::at_least(Rational(*rem.prec()))
                                       : rem.val();
    Rational radius =
        dist.is_unknown() ? dist.amount() : dist.finite_amount();
    nest.balls.push_back(Ball<LaurentSeries>{y, Value::finite(radius)});
  }
  nest.validate();
  return nest;
}

}  // namespace valfield
