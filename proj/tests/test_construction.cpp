#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valfield/construction.hpp"
#include "valfield/ultra.hpp"

using namespace valfield;

namespace {

ConstructionParams base_params(std::int64_t p, int J, int M,
                               std::vector<std::int64_t> q) {
  ConstructionParams params;
  params.p = p;
  params.J = J;
  params.M = M;
  params.q = {std::move(q)};
  return params;
}

HahnSeries HT(const ConstructionParams& pr, std::int64_t c, Rational texp,
              Rational sexp) {
  return HahnSeries::t_monomial(pr.p, pr.M, c, texp, sexp, pr.denom_cap());
}

}  // namespace

TEST_CASE("smallest admissible prime progressions") {
  CHECK(prime_sequence(2, 1, 1, 3) ==
        std::vector<std::vector<std::int64_t>>{{5, 11, 17}});
  CHECK(prime_sequence(2, 2, 1, 2) ==
        std::vector<std::vector<std::int64_t>>{{11, 17}});
  CHECK(prime_sequence(3, 1, 1, 1) ==
        std::vector<std::vector<std::int64_t>>{{11}});
  // disjoint progressions, level by level
  auto two = prime_sequence(2, 1, 2, 2);
  CHECK(two == std::vector<std::vector<std::int64_t>>{{5, 11}, {7, 13}});
}

TEST_CASE("parameter validation") {
  auto p1 = base_params(2, 3, 3, {5, 11, 17});
  p1.validate();

  auto bad_growth = base_params(2, 3, 3, {5, 7, 17});  // 8 >= 7 at a root step
  CHECK_THROWS_AS(bad_growth.validate(), Error);

  // the last prime feeds no root step: tolerated, but flagged
  auto last = base_params(2, 4, 4, {5, 11, 17, 23});
  last.validate();
  CHECK(last.growth_flags().size() == 1);

  auto shallow = base_params(2, 3, 2, {5, 11, 17});  // M < nJ
  CHECK_THROWS_AS(shallow.validate(), Error);
}

TEST_CASE("tower levels match the frozen expansions") {
  auto tower = build_xi_tower(base_params(2, 3, 3, {5, 11, 17}));
  const auto& pr = tower.params;

  CHECK(tower.xi_at(1) == HT(pr, 1, 0, Rational(-1, 2)));
  CHECK(tower.xi_at(2) == HT(pr, 1, 0, Rational(-1, 4)) +
                              HT(pr, 1, Rational(1, 2), Rational(-1, 5)));
  CHECK(tower.xi_at(3) == HT(pr, 1, 0, Rational(-1, 8)) +
                              HT(pr, 1, Rational(1, 4), Rational(-1, 10)) +
                              HT(pr, 1, Rational(1, 2), Rational(-1, 11)));

  // the recursion is exact and the values follow -1/p^j
  for (int j = 1; j < pr.J; ++j) CHECK(tower_recursion_holds(tower, j));
  for (int j = 1; j <= pr.J; ++j) {
    Rational expect(-1);
    for (int e = 0; e < j; ++e) expect = expect / Rational(2);
    CHECK(tower.xi_at(j).sval() == Value::finite(expect));
    // -1/p^j < -p/q_j whenever the growth condition holds
    if (j < pr.J)
      CHECK(expect < Rational(-2, pr.q[0][static_cast<size_t>(j - 1)]));
  }
  CHECK(tower.support_sizes() == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("pseudo-limit partials validate as prefixes") {
  auto tower = build_xi_tower(base_params(2, 4, 4, {5, 11, 17, 23}));

  CHECK(pseudo_limit_a(tower, 1) == tower.xi_at(1));
  auto a2 = pseudo_limit_a(tower, 2);
  CHECK(a2 == tower.xi_at(1) + tower.xi_at(2));

  std::vector<HahnSeries> as, xs;
  for (int k = 1; k <= 4; ++k) {
    as.push_back(pseudo_limit_a(tower, k));
    xs.push_back(x1_partial(tower, 0, k));
  }
  auto ga = pcseq_gammas(as);
  CHECK(ga[0] == Value::finite(Rational(-1, 4)));
  CHECK(ga[1] == Value::finite(Rational(-1, 8)));
  CHECK(ga[2] == Value::finite(Rational(-1, 16)));
  auto gx = pcseq_gammas(xs);
  CHECK(gx[0] == Value::finite(Rational(-1, 11)));
  CHECK(gx[1] == Value::finite(Rational(-1, 17)));
  CHECK(gx[2] == Value::finite(Rational(-1, 23)));
}

TEST_CASE("telescoping identity pins the corrective value") {
  auto tower = build_xi_tower(base_params(2, 4, 4, {5, 11, 17, 23}));
  CHECK(telescope_check(tower, 1) == Value::finite(Rational(-1, 2)));
  CHECK(telescope_check(tower, 2) == Value::finite(Rational(-1, 4)));
  CHECK(telescope_check(tower, 3) == Value::finite(Rational(-1, 8)));

  ConstructionParams p3;
  p3.p = 3;
  p3.J = 3;
  p3.M = 3;
  p3.q = prime_sequence(3, 1, 1, 3);
  auto t3 = build_xi_tower(p3);
  CHECK(telescope_check(t3, 1) == Value::finite(Rational(-1, 3)));
  CHECK(telescope_check(t3, 2) == Value::finite(Rational(-1, 9)));
}

TEST_CASE("the sequence does not fix the artin-schreier value") {
  auto tower = build_xi_tower(base_params(2, 4, 4, {5, 11, 17, 23}));
  // f = X^2 - X - (x - t x1^2) over the rational-exponent field
  auto x1 = x1_partial(tower, 0, 4);
  auto tc = HT(tower.params, 1, 1, 0);
  auto c0 = -(tower.x_elem() - tc * x1.frobenius(1));
  auto one = HahnSeries::one(2, tower.params.M, tower.params.denom_cap());
  GeneralPoly<HahnSeries> f(2, {c0, -one, one});

  std::vector<HahnSeries> prefix;
  for (int k = 1; k <= 3; ++k) prefix.push_back(pseudo_limit_a(tower, k));
  auto rep = value_fixing_report(f, prefix);
  CHECK(!rep.fixed);
  CHECK(rep.observed[0] == Value::finite(Rational(-1, 2)));
  CHECK(rep.observed[1] == Value::finite(Rational(-1, 4)));
  CHECK(rep.observed[2] == Value::finite(Rational(-1, 8)));
}

TEST_CASE("value group membership at each stage") {
  auto params = base_params(2, 4, 4, {5, 11, 17, 23});

  auto l1 = value_group_report(params, ValueGroup::Stage::L1);
  CHECK(l1.contains(Rational(1, 5)));
  CHECK(l1.contains(Rational(3, 35)));
  CHECK(!l1.contains(Rational(1, 2)));

  auto lvl3 = value_group_report(params, ValueGroup::Stage::TowerLevel, 3);
  CHECK(lvl3.contains(Rational(1, 8)));
  CHECK(lvl3.contains(Rational(1, 40)));
  CHECK(!lvl3.contains(Rational(1, 16)));

  auto l2 = value_group_report(params, ValueGroup::Stage::L2Limit);
  CHECK(l2.contains(Rational(1, 16)));

  auto roots = value_group_report(params, ValueGroup::Stage::AdjoinedRoots);
  CHECK(roots.contains(Rational(1, 5)));
  CHECK(roots.contains(Rational(1, 55)));
  CHECK(!roots.contains(Rational(1, 25)));
  CHECK(!roots.contains(Rational(1, 3)));
}

TEST_CASE("modification 1 progressions stay disjoint") {
  ConstructionParams params;
  params.p = 3;
  params.n = 1;
  params.m = 2;
  params.J = 2;
  params.M = 2;
  params.modification = ConstructionParams::Modification::Mod1;
  params.q = prime_sequence(3, 1, 2, 2);
  auto tower = build_xi_tower(params);
  CHECK(tower.support_sizes() == std::vector<std::int64_t>{1, 3});
  CHECK(tower_recursion_holds(tower, 1));

  auto g0 = value_group_report(params, ValueGroup::Stage::AdjoinedRoots, 0, 0);
  auto g1 = value_group_report(params, ValueGroup::Stage::AdjoinedRoots, 0, 1);
  for (std::int64_t q0 : params.q[0]) {
    CHECK(g0.contains(Rational(1, q0)));
    CHECK(!g1.contains(Rational(1, q0)));
  }
  for (std::int64_t q1 : params.q[1]) {
    CHECK(g1.contains(Rational(1, q1)));
    CHECK(!g0.contains(Rational(1, q1)));
  }
}

TEST_CASE("modification 2 rebuilds the tower with p^n-th roots") {
  ConstructionParams params;
  params.p = 2;
  params.n = 2;
  params.m = 3;
  params.J = 2;
  params.M = 4;
  params.modification = ConstructionParams::Modification::Mod2;
  params.q = {{17, 19}, {23, 29}, {31, 37}};  // root step needs q > p^(2n)
  auto tower = build_xi_tower(params);
  CHECK(tower.xi_at(1).sval() == Value::finite(Rational(-1, 4)));
  CHECK(tower.xi_at(2).sval() == Value::finite(Rational(-1, 16)));
  CHECK(tower_recursion_holds(tower, 1));
}

TEST_CASE("modification 3 builds one tower per formal generator") {
  ConstructionParams params;
  params.p = 2;
  params.J = 2;
  params.M = 2;
  params.modification = ConstructionParams::Modification::Mod3;
  params.generators = 2;
  params.q = prime_sequence(2, 1, 2, 2);
  auto c = build_construction(params);
  REQUIRE(c.towers.size() == 2);
  CHECK(c.towers[0].params.q[0] != c.towers[1].params.q[0]);
  for (const auto& tower : c.towers) CHECK(tower_recursion_holds(tower, 1));
}

TEST_CASE("candidate refutation pipeline") {
  auto tower = build_xi_tower(base_params(2, 4, 4, {5, 11, 17, 23}));
  const auto& pr = tower.params;
  auto zero = HahnSeries::zero(pr.p, pr.M, pr.denom_cap());

  // w(y) < 0 refutes at the precondition
  TwistCandidate c1{tower.x_elem(), {zero, zero}};
  auto r1 = twist_obstruction_check(tower, c1, 1, 3);
  CHECK(r1.verdict == TwistReport::Verdict::RefutedPrecondition);

  // the finite-depth stand-in: remainder carries the telescope value -1/p^k
  int k = 2;
  TwistCandidate c2{zero,
                    {pseudo_limit_a(tower, k), x1_partial(tower, 0, k - 1)}};
  auto r2 = twist_obstruction_check(tower, c2, 1, 3);
  CHECK(r2.verdict == TwistReport::Verdict::RefutedNonExact);
  bool saw_value = false;
  for (const auto& s : r2.steps)
    if (s.name == "exact representation")
      saw_value = s.detail.find("-1/4") != std::string::npos;
  CHECK(saw_value);

  // a deviating x_1 fires the deviation inequality and the valuation chain
  auto dev = x1_partial(tower, 0, 4) +
             HahnSeries::term(pr.p, pr.M, Rational(-1, 3),
                              LaurentSeries::one(2), pr.denom_cap());
  TwistCandidate c3{zero, {pseudo_limit_a(tower, 4), dev}};
  auto r3 = twist_obstruction_check(tower, c3, 1, 3);
  CHECK(r3.verdict == TwistReport::Verdict::RefutedNonExact);
  bool dev_found = false, chain_ok = false;
  for (const auto& s : r3.steps) {
    if (s.name == "deviation detection")
      dev_found = s.detail.find("deviates") != std::string::npos;
    if (s.name == "valuation chain")
      chain_ok = s.detail.find("holds") != std::string::npos;
  }
  CHECK(dev_found);
  CHECK(chain_ok);
}
