// Acceptance suite: every criterion runs at its stated tolerance and prints
// one PASS/FAIL line. The binary exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "valfield/cli_core.hpp"
#include "valfield/decomp.hpp"
#include "valfield/parse.hpp"
#include "valfield/ultra.hpp"

using namespace valfield;

namespace {

struct Criterion {
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      std::printf("    FAILED check: %s\n", what.c_str());
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

LaurentSeries frobenius_reexpand(const std::vector<LaurentSeries>& parts,
                                 std::int64_t p) {
  LaurentSeries acc = LaurentSeries::zero(p);
  for (size_t i = 0; i < parts.size(); ++i)
    acc = acc + LaurentSeries::monomial(p, 1, static_cast<std::int64_t>(i)) *
                    parts[i].frobenius(1);
  return acc;
}

// 1. Decomposition round-trip, 1000 random series per p in {2,3,5}.
void criterion_1(Criterion& c) {
  auto start = Clock::now();
  for (std::int64_t p : {2, 3, 5}) {
    SeriesSampler gen(p, 1001);
    for (int i = 0; i < 1000; ++i) {
      LaurentSeries x = gen.series(-20, 20, 64);
      auto parts = frobenius_parts(x);
      c.expect((frobenius_reexpand(parts, p) - x).is_zero_to_prec(),
               "frobenius re-expansion");
      auto d = as_decompose(x);
      c.expect((d.reexpand() - x).is_zero_to_prec(), "as re-expansion");
      c.expect(Value::geq(d.y.val(), Value::finite(Rational(0))), "v(y) >= 0");
      std::int64_t neg = 0;
      if (!x.is_zero_to_prec() && x.val().finite_amount() < Rational(0))
        neg = -x.val().finite_amount().num();
      c.expect(d.iterations <= neg, "iteration bound");
      auto dh = as_decompose_henselian(x);
      c.expect((dh.reexpand() - x).is_zero_to_prec(),
               "henselian re-expansion");
    }
  }
  c.expect(seconds_since(start) < 10.0, "runtime under 10 s");
}

// 2. wp-solver: v(wp(u) - m) >= prec and v(u) = v(m), exact.
void criterion_2(Criterion& c) {
  for (std::int64_t p : {2, 3, 5}) {
    SeriesSampler gen(p, 2002);
    for (int i = 0; i < 334; ++i) {
      LaurentSeries m = gen.series(1, 20, 64);
      if (m.is_zero_to_prec()) continue;
      LaurentSeries u = wp_solve(m);
      LaurentSeries diff = u.frobenius(1) - u - m;
      c.expect(diff.is_zero_to_prec() && diff.prec().has_value() &&
                   *diff.prec() >= 64,
               "v(wp(u) - m) >= prec");
      c.expect(Value::eq(u.val(), m.val()), "v(u) = v(m)");
    }
  }
}

// 3. Constructive pd witnesses on the twist polygroup, p in {2,3}.
void criterion_3(Criterion& c) {
  for (std::int64_t p : {2, 3}) {
    PolygroupSpec spec = PolygroupSpec::wp_twist(p);
    SeriesSampler gen(p, 3003);
    for (int i = 0; i < 500; ++i) {
      std::vector<LaurentSeries> x;
      for (size_t k = 0; k < spec.fs.size(); ++k)
        x.push_back(gen.series(-6, 6, 48));
      std::vector<LaurentSeries> z;
      for (size_t k = 0; k < spec.fs.size(); ++k)
        z.push_back(spec.fs[k].eval(x[k]));
      LaurentSeries sum = LaurentSeries::zero(p);
      for (const auto& e : z) sum = sum + e;
      if (sum.is_zero_to_prec()) continue;
      Value mv = Value::infinity();
      for (const auto& e : z)
        if (Value::lt(e.val(), mv)) mv = e.val();
      if (Value::eq(sum.val(), mv)) continue;  // premise did not fire

      PdWitness w = pd_witness(spec, x);
      c.expect(w.kind == PdWitness::Kind::Witness, "witness produced");
      if (w.kind != PdWitness::Kind::Witness) continue;
      std::vector<LaurentSeries> zp;
      for (size_t k = 0; k < spec.fs.size(); ++k)
        zp.push_back(spec.fs[k].eval(w.y[k]));
      c.expect(pd_check(z, zp), "witness passes pd");

      PdWitness wh = pd_witness(spec, x, true);
      LaurentSeries back = LaurentSeries::zero(p);
      for (size_t k = 0; k < spec.fs.size(); ++k)
        back = back + spec.fs[k].eval(wh.y[k]);
      c.expect((back - sum).is_zero_to_prec(), "henselian-exact sum");
    }
  }
}

// 4. The coset criterion and 10^4 random K^p-combinations.
void criterion_4(Criterion& c) {
  for (std::int64_t p : {2, 3, 5}) {
    std::vector<LaurentSeries> basis;
    for (std::int64_t i = 0; i < p; ++i)
      basis.push_back(LaurentSeries::monomial(p, 1, i));
    auto v = valuation_independent(basis);
    c.expect(v.kind == IndependenceVerdict::Kind::IndependentProven,
             "coset criterion declares 1, t, ..., t^(p-1) independent");

    SeriesSampler gen(p, 4004);
    for (int s = 0; s < 3334; ++s) {
      LaurentSeries acc = LaurentSeries::zero(p);
      Value mv = Value::infinity();
      for (std::int64_t i = 0; i < p; ++i) {
        LaurentSeries d = gen.series(-5, 5, 40);
        if (gen.below(4) == 0) d = LaurentSeries::zero(p);
        LaurentSeries term = basis[static_cast<size_t>(i)] * d.frobenius(1);
        acc = acc + term;
        if (!term.is_zero_to_prec() && Value::lt(term.val(), mv))
          mv = term.val();
      }
      bool ok;
      if (mv.is_infinite())
        ok = acc.is_zero_to_prec();
      else
        ok = !acc.is_zero_to_prec() && Value::eq(acc.val(), mv);
      c.expect(ok, "v(sum c_i d_i) = min v(c_i d_i)");
    }

    auto dep = valuation_independent(
        {LaurentSeries::one(p), LaurentSeries::one(p)});
    c.expect(dep.kind == IndependenceVerdict::Kind::Dependent,
             "the dependent control (1, 1) yields a witness");
  }
}

// 5. Optimal approximation distance is 0 or infinity, tied to j.
void criterion_5(Criterion& c) {
  PolygroupSpec spec = PolygroupSpec::wp_twist(2);
  SeriesSampler gen(2, 5005);
  for (int i = 0; i < 200; ++i) {
    LaurentSeries z = gen.series(-10, 10, 32);
    ASDecomposition d = as_decompose_henselian(z, 1, 32);
    ApproxResult r = optimal_approx(z, spec, 32);
    bool zero_or_inf = r.distance.is_infinite() ||
                       r.distance == Value::finite(Rational(0));
    c.expect(zero_or_inf, "distance in {0, inf}");
    c.expect(r.distance.is_infinite() == (d.j == 0),
             "infinite exactly when j absorbs z");
    if (r.distance.is_finite()) {
      c.expect(Value::eq((z - r.y).val(), r.distance), "witness distance");
      c.expect(r.certificate.find("obstruction") != std::string::npos,
               "finite distance carries the obstruction certificate");
    }
  }
}

// 6. Preimage balls: count, membership, root coverage, center independence.
void criterion_6(Criterion& c) {
  struct Case {
    GeneralPoly<LaurentSeries> f;
    std::int64_t p;
  };
  std::vector<Case> cases;
  cases.push_back({to_general(wp_poly(2), LaurentSeries::zero(2)), 2});
  cases.push_back({GeneralPoly<LaurentSeries>(
                       2, {LaurentSeries::zero(2), LaurentSeries::zero(2),
                           LaurentSeries::monomial(2, 1, 1)}),
                   2});
  cases.push_back({GeneralPoly<LaurentSeries>(
                       2, {LaurentSeries::zero(2), LaurentSeries::zero(2),
                           LaurentSeries::one(2)}),
                   2});
  cases.push_back({to_general(wp_poly(3), LaurentSeries::zero(3)), 3});

  for (auto& [f, p] : cases) {
    SeriesSampler gen(p, 6006);
    for (int trial = 0; trial < 20; ++trial) {
      LaurentSeries base = gen.series(-2, 2, 48);
      LaurentSeries center = f.eval(base);
      Rational radius(1 + gen.below(6));
      Ball<LaurentSeries> ball{center, Value::finite(radius)};
      PreimageResult pre = poly_preimage_ball(f, ball, 24);
      c.expect(static_cast<std::int64_t>(pre.balls.size()) <= f.degree(),
               "ball count <= deg f");

      for (const auto& gb : pre.balls) {
        bool has_root = false;
        for (const auto& r : pre.roots) has_root = has_root || gb.contains(r);
        c.expect(has_root, "every ball contains a computed root");
      }

      for (int s = 0; s < 25; ++s) {
        LaurentSeries x = base + gen.series(-3, 7, 48);
        bool inside = false;
        for (const auto& gb : pre.balls) inside = inside || gb.contains(x);
        c.expect(inside == ball.contains(f.eval(x)),
                 "membership equivalence");
      }

      LaurentSeries center2 =
          center + f.eval(gen.series(radius.num(), 20, 48));
      if (!ball.contains(center2)) continue;
      PreimageResult pre2 = poly_preimage_ball(f, {center2, ball.radius}, 24);
      bool same = pre.balls.size() == pre2.balls.size();
      for (size_t i = 0; same && i < pre.balls.size(); ++i)
        same = compare_balls(pre.balls[i].outer(), pre2.balls[i].outer()) ==
               BallRelation::Equal;
      c.expect(same, "output identical for two centers in the ball");
    }
  }
}

// 7. The tower and the telescoping identity, exactly.
void criterion_7(Criterion& c) {
  auto start = Clock::now();
  ConstructionParams params;
  params.p = 2;
  params.J = 4;
  params.M = 4;
  params.q = {{5, 11, 17, 23}};
  XiTower tower = build_xi_tower(params);
  for (int j = 1; j <= 4; ++j) {
    Rational expect(-1);
    for (int e = 0; e < j; ++e) expect = expect / Rational(2);
    c.expect(tower.xi_at(j).sval() == Value::finite(expect),
             "v_s xi_j = -1/2^j at j = " + std::to_string(j));
  }
  for (int j = 1; j < 4; ++j)
    c.expect(tower_recursion_holds(tower, j),
             "recursion reconstructs exactly at j = " + std::to_string(j));
  for (int k = 1; k <= 3; ++k) {
    Rational expect(-1);
    for (int e = 0; e < k; ++e) expect = expect / Rational(2);
    c.expect(telescope_check(tower, k) == Value::finite(expect),
             "telescope value at k = " + std::to_string(k));
  }

  ConstructionParams p3;
  p3.p = 3;
  p3.J = 3;
  p3.M = 3;
  p3.q = prime_sequence(3, 1, 1, 3);
  XiTower t3 = build_xi_tower(p3);
  for (int j = 1; j <= 3; ++j) {
    Rational expect(-1);
    for (int e = 0; e < j; ++e) expect = expect / Rational(3);
    c.expect(t3.xi_at(j).sval() == Value::finite(expect),
             "p=3 tower value at j = " + std::to_string(j));
  }
  for (int j = 1; j < 3; ++j)
    c.expect(tower_recursion_holds(t3, j), "p=3 recursion");
  for (int k = 1; k <= 2; ++k) {
    Rational expect(-1);
    for (int e = 0; e < k; ++e) expect = expect / Rational(3);
    c.expect(telescope_check(t3, k) == Value::finite(expect),
             "p=3 telescope at k = " + std::to_string(k));
  }
  c.expect(seconds_since(start) < 5.0, "runtime under 5 s");
}

// 8. Value-group membership reports.
void criterion_8(Criterion& c) {
  ConstructionParams params;
  params.p = 2;
  params.J = 4;
  params.M = 4;
  params.q = {{5, 11, 17, 23}};

  auto l1 = value_group_report(params, ValueGroup::Stage::L1);
  for (std::int64_t n : {3, 5, 7, 9, 15, 21})
    c.expect(l1.contains(Rational(1, n)), "1/n in the base group");
  c.expect(!l1.contains(Rational(1, 2)), "1/p rejected");
  c.expect(!l1.contains(Rational(1, 6)), "1/(2n) rejected");

  for (int j = 1; j <= 4; ++j) {
    auto lvl = value_group_report(params, ValueGroup::Stage::TowerLevel, j);
    std::int64_t pj = 1;
    for (int e = 0; e < j; ++e) pj *= 2;
    c.expect(lvl.contains(Rational(1, pj)), "1/p^j at level j");
    c.expect(!lvl.contains(Rational(1, 2 * pj)), "1/p^(j+1) rejected");
  }

  ConstructionParams mod1;
  mod1.p = 3;
  mod1.m = 2;
  mod1.J = 2;
  mod1.M = 2;
  mod1.modification = ConstructionParams::Modification::Mod1;
  mod1.q = prime_sequence(3, 1, 2, 2);
  auto g0 = value_group_report(mod1, ValueGroup::Stage::AdjoinedRoots, 0, 0);
  auto g1 = value_group_report(mod1, ValueGroup::Stage::AdjoinedRoots, 0, 1);
  for (std::int64_t q : mod1.q[0])
    c.expect(g0.contains(Rational(1, q)) && !g1.contains(Rational(1, q)),
             "progression 0 prime stays out of progression 1");
  for (std::int64_t q : mod1.q[1])
    c.expect(g1.contains(Rational(1, q)) && !g0.contains(Rational(1, q)),
             "progression 1 prime stays out of progression 0");
}

// 9. Level-2 decomposition round trip; growth assertion for the primes.
void criterion_9(Criterion& c) {
  SeriesSampler gen(2, 9009);
  for (int i = 0; i < 200; ++i) {
    LaurentSeries x = gen.series(-16, 16, 64);
    ASDecomposition d = as_decompose(x, 2);
    c.expect((d.reexpand() - x).is_zero_to_prec(), "level-2 re-expansion");
    c.expect(Value::geq(d.y.val(), Value::finite(Rational(0))),
             "level-2 v(y) >= 0");
  }
  auto q = prime_sequence(2, 2, 3, 3);
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < q[i].size(); ++j) {
      std::int64_t bound = 1;
      for (size_t e = 0; e < j + 1 + 2; ++e) bound *= 2;
      c.expect(bound < q[i][j], "growth condition p^(j+n) < q");
    }
}

// 10. Parser corpus round trip and byte-identical fixed-seed runs.
void criterion_10(Criterion& c) {
  // every series literal that appears in the worked examples, then random fill
  std::vector<std::string> corpus = {
      "GF(2)[[t]]: t^-1 + 1 + O(t^4)",
      "GF(3)[[t]]: 2*t^2",
      "GF(2)[[t]]: t^-2",
      "GF(2)[[t]]: 1 + t^1 + O(t^8)",
      "GF(2)[[t]]: t^1 + O(t^4)",
      "GF(3)[[t]]: t^3 + 2*t^6 + O(t^9)",
      "GF(2)[[t]]: 0",
      "GF(2)[[t]]: O(t^5)",
      "GF(2)[[t]]: 1",
      "GF(2)[[t]]: t^-1 + 1",
      "GF(5)[[t]]: 4*t^-3 + 2 + 3*t^11",
      "GF(2)[[t]]: t^2 + O(t^3)",
      "GF(2)[[t]]: t^-2 + 1 + O(t^5)",
      "GF(2)[[t]]: 1 + t^1 + O(t^3)",
      "GF(3)[[t]]: t^1 + O(t^5)",
      "GF(2)[[t]]: t^-1",
      "GF(2)[[t]]: 1 + t^1 + t^2 + O(t^4)",
      "GF(3)[[t]]: t^2",
      "GF(2)[[t]]: t^1 + t^2",
      "GF(2)[[t]]: t^2 + t^4",
      "GF(2)[[t]]: t^1 + t^2 + t^4 + O(t^8)",
      "GF(2)[[t]]: t^1 + t^2 + t^3 + O(t^8)",
      "GF(2)[[t]]: t^1",
      "GF(3)[[t]]: t^1 + 2*t^2 + O(t^3)",
  };
  for (std::int64_t p : {2, 3, 5}) {
    SeriesSampler gen(p, 1010);
    for (int i = 0; i < 70; ++i)
      corpus.push_back(print_series(gen.series(-20, 20, 32)));
  }
  c.expect(corpus.size() >= 200, "corpus size >= 200");
  for (const auto& s : corpus) {
    LaurentSeries x = parse_series(s);
    c.expect(parse_series(print_series(x)) == x, "round trip: " + s);
  }

  std::vector<std::string> hahn_corpus = {
      "GF(2)[[s^Q; t^(1/p^1)]]: s^(-1/4) + t^(1/2)*s^(-1/5)",
      "GF(2)[[s^Q; t^(1/p^2)]]: s^(-1/2) + t^(1)*s^(-2/5)",
      "GF(3)[[s^Q; t^(1/p^1)]]: 2*t^(1/3)*s^(-1/11) + O(s^(0))",
  };
  for (const auto& s : hahn_corpus) {
    HahnSeries x = parse_hahn(s);
    c.expect(parse_hahn(print_hahn(x)) == x, "hahn round trip: " + s);
  }

  std::vector<std::string> args = {"pd",        "--wp-twist", "--prime", "3",
                                   "--samples", "40",         "--seed",  "5",
                                   "--format",  "json"};
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  c.expect(a.exit_code == 0 && a.out == b.out,
           "fixed-seed runs byte-identical");
  std::vector<std::string> args2 = {"decompose", "--prime", "2",
                                    "--prec",    "32",      "--format",
                                    "json",      "GF(2)[[t]]: t^-2"};
  c.expect(run_cli(args2).out == run_cli(args2).out,
           "decompose runs byte-identical");
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<void(Criterion&)> fn;
  };
  std::vector<Entry> entries = {
      {"1. decomposition round-trip (3x1000 random series)", criterion_1},
      {"2. wp-solver exactness (1000 random inputs)", criterion_2},
      {"3. constructive pd witnesses (2x500 tuples)", criterion_3},
      {"4. coset criterion and 10^4 independence samples", criterion_4},
      {"5. optimal approximation distance in {0, inf} (200 z)", criterion_5},
      {"6. preimage balls (4 maps x 20 balls)", criterion_6},
      {"7. tower values, recursion and telescope", criterion_7},
      {"8. value-group membership reports", criterion_8},
      {"9. level-2 decomposition and prime growth", criterion_9},
      {"10. parser corpus and byte-identical runs", criterion_10},
  };

  int failed = 0;
  for (auto& e : entries) {
    Criterion c;
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    bool ok = c.failures == 0;
    std::printf("[%s] criterion %s\n", ok ? "PASS" : "FAIL", e.name);
    if (!ok) ++failed;
  }
  if (failed) std::printf("%d criteria FAILED\n", failed);
  return failed == 0 ? 0 : 1;
}
