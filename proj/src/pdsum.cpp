#include "valfield/pdsum.hpp"

#include <algorithm>

#include "valfield/decomp.hpp"

namespace valfield {

namespace {

LaurentSeries sum_of(const std::vector<LaurentSeries>& v, std::int64_t p) {
  LaurentSeries s = LaurentSeries::zero(p);
  for (const auto& e : v) s = s + e;
  return s;
}

Value min_val(const std::vector<LaurentSeries>& v) {
  Value m = Value::infinity();
  for (const auto& e : v) {
    Value w = e.val();
    if (Value::lt(w, m)) m = w;
  }
  return m;
}

}  // namespace

std::optional<std::vector<LaurentSeries>> PolygroupSpec::twist_shape() const {
  if (fs.empty()) return std::nullopt;
  const size_t lv = static_cast<size_t>(level);
  auto is_wp = [&](const AdditivePoly<LaurentSeries>& f) {
    if (f.coeffs().size() != lv + 1) return false;
    if (!(f.coeffs().front() == LaurentSeries::monomial(p, -1, 0)))
      return false;
    for (size_t i = 1; i < lv; ++i)
      if (!f.coeffs()[i].is_exactly_zero()) return false;
    return f.coeffs().back() == LaurentSeries::one(p);
  };
  if (!is_wp(fs[0])) return std::nullopt;
  std::vector<LaurentSeries> twists;
  for (size_t k = 1; k < fs.size(); ++k) {
    const auto& f = fs[k];
    if (f.coeffs().size() != lv + 1) return std::nullopt;
    for (size_t i = 0; i < lv; ++i)
      if (!f.coeffs()[i].is_exactly_zero()) return std::nullopt;
    if (f.coeffs().back().is_zero_to_prec()) return std::nullopt;
    twists.push_back(f.coeffs().back());
  }
  return twists;
}

PolygroupSpec PolygroupSpec::wp_twist(std::int64_t p, int level) {
  PolygroupSpec spec;
  spec.p = p;
  spec.level = level;
  spec.fs.push_back(wp_poly_level(p, level));
  std::int64_t P = spec.P();
  for (std::int64_t i = 1; i < P; ++i) {
    std::vector<LaurentSeries> coeffs(static_cast<size_t>(level) + 1,
                                      LaurentSeries::zero(p));
    coeffs.back() = LaurentSeries::monomial(p, 1, i);
    spec.fs.push_back(AdditivePoly<LaurentSeries>(p, std::move(coeffs)));
  }
  return spec;
}

bool pd_check(const std::vector<LaurentSeries>& z,
              const std::vector<LaurentSeries>& zp) {
  if (z.empty() || z.size() != zp.size())
    fail(ErrorCode::BadArgument, "pd needs two tuples of equal length");
  const std::int64_t p = z.front().prime();
  LaurentSeries sz = sum_of(z, p);
  LaurentSeries szp = sum_of(zp, p);
  // v(sum z - sum z') > v(sum z), where inf > inf is false and
  // inf > finite is true; then v(sum z') = min_i v(z'_i).
  if (!Value::gt((sz - szp).val(), sz.val())) return false;
  return Value::eq(szp.val(), min_val(zp));
}

PdWitness pd_witness(const PolygroupSpec& spec,
                     const std::vector<LaurentSeries>& x, bool henselian_exact,
                     std::optional<std::int64_t> working_prec) {
  auto twists = spec.twist_shape();
  if (!twists)
    fail(ErrorCode::PreconditionFailed,
         "constructive witnesses need the shape (X^P - X, c_1 X^P, ...)");
  std::vector<LaurentSeries> c;
  c.push_back(LaurentSeries::one(spec.p));
  for (auto& t : *twists) c.push_back(t);
  IndependenceVerdict iv = valuation_independent(
      c, IndependenceMode::ExactCosets, spec.level);
  if (iv.kind == IndependenceVerdict::Kind::Dependent)
    fail(ErrorCode::PreconditionFailed,
         "twist coefficients are not valuation independent");
  if (x.size() != spec.fs.size())
    fail(ErrorCode::BadArgument, "tuple length does not match the polygroup");

  std::vector<LaurentSeries> z;
  z.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) z.push_back(spec.fs[i].eval(x[i]));
  LaurentSeries s = sum_of(z, spec.p);

  if (s.is_exactly_zero()) {
    bool trivial = true;
    for (const auto& e : z) trivial = trivial && e.is_exactly_zero();
    return {trivial ? PdWitness::Kind::NotNeeded
                    : PdWitness::Kind::NotNeededDegenerate,
            {}};
  }
  Value vs = s.val();
  Value mv = min_val(z);
  if (Value::eq(vs, mv)) return {PdWitness::Kind::NotNeeded, {}};

  // Premise fired; the independence argument forces v(sum) > 0.
  if (!Value::gt(vs, Value::finite(Rational(0))))
    fail(ErrorCode::PreconditionFailed,
         "sum with v <= 0 escaped the independence argument");
  PdWitness w{PdWitness::Kind::Witness, {}};
  w.y.assign(x.size(), LaurentSeries::zero(spec.p));
  if (henselian_exact)
    w.y[0] = wp_solve(s, spec.level, working_prec);
  else
    w.y[0] = -s;
  return w;
}

IndependenceVerdict valuation_independent(const std::vector<LaurentSeries>& c,
                                          IndependenceMode mode, int level,
                                          int samples, std::uint64_t seed) {
  if (c.empty()) fail(ErrorCode::BadArgument, "empty coefficient tuple");
  const std::int64_t p = c.front().prime();
  std::int64_t P = 1;
  for (int i = 0; i < level; ++i) P *= p;

  for (const auto& ci : c)
    if (ci.is_zero_to_prec())
      fail(ErrorCode::UndecidableValue,
           "coefficient is zero to precision; independence undecidable");

  if (mode == IndependenceMode::ExactCosets) {
    std::vector<std::int64_t> cosets;
    bool distinct = true;
    for (const auto& ci : c) {
      std::int64_t v = ci.val().finite_amount().num();
      std::int64_t r = floor_mod(v, P);
      if (std::find(cosets.begin(), cosets.end(), r) != cosets.end())
        distinct = false;
      cosets.push_back(r);
    }
    if (distinct)
      return {IndependenceVerdict::Kind::IndependentProven,
              {},
              "values lie in pairwise distinct cosets mod " +
                  std::to_string(P)};
    // criterion inapplicable; fall through to sampling
  }

  auto violates = [&](const std::vector<LaurentSeries>& d) -> bool {
    LaurentSeries s = LaurentSeries::zero(p);
    Value m = Value::infinity();
    for (size_t i = 0; i < c.size(); ++i) {
      LaurentSeries term = c[i] * d[i];
      s = s + term;
      Value v = term.val();
      try {
        if (Value::lt(v, m)) m = v;
      } catch (const Error&) {
        return false;  // undecidable sample certifies nothing
      }
    }
    try {
      return !Value::eq(s.val(), m);
    } catch (const Error&) {
      return false;
    }
  };

  // All-constant tuples first (constants are P-th powers in F_p).
  const size_t n = c.size();
  std::int64_t total = 1;
  bool overflow = false;
  for (size_t i = 0; i < n && !overflow; ++i) {
    total *= p;
    if (total > 20000) overflow = true;
  }
  if (!overflow) {
    std::vector<LaurentSeries> d(n, LaurentSeries::zero(p));
    for (std::int64_t code = 1; code < total; ++code) {
      std::int64_t rest = code;
      for (size_t i = n; i-- > 0;) {
        d[i] = LaurentSeries::monomial(p, rest % p, 0);
        rest /= p;
      }
      if (violates(d))
        return {IndependenceVerdict::Kind::Dependent, d, "constant tuple"};
    }
  }

  SeriesSampler gen(p, seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<LaurentSeries> d;
    d.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      LaurentSeries e = gen.series(-2, 2, 8);
      if (gen.below(4) == 0) e = LaurentSeries::zero(p);
      d.push_back(e.frobenius(level));
    }
    if (violates(d))
      return {IndependenceVerdict::Kind::Dependent, d, "sampled tuple"};
  }
  return {IndependenceVerdict::Kind::IndependentSampled,
          {},
          "no violation in " + std::to_string(samples) + " samples"};
}

PdSumVerdict pd_sum_check(const PolygroupSpec& spec, int samples,
                          std::uint64_t seed, std::int64_t prec) {
  const std::int64_t p = spec.p;
  const size_t n = spec.fs.size();
  const bool constructive = spec.twist_shape().has_value();

  PdSumVerdict out{PdSumVerdict::Kind::HoldsOnSamples, {}, 0, 0, ""};

  auto judge = [&](const std::vector<LaurentSeries>& x) -> bool {
    ++out.samples_run;
    std::vector<LaurentSeries> z;
    z.reserve(n);
    for (size_t i = 0; i < n; ++i) z.push_back(spec.fs[i].eval(x[i]));
    LaurentSeries s = sum_of(z, p);
    if (s.is_exactly_zero()) {
      bool trivial = true;
      for (const auto& e : z) trivial = trivial && e.is_exactly_zero();
      if (trivial) {
        ++out.degenerate;
        return true;
      }
      // No replacement tuple can approximate an exact zero strictly.
      out.kind = PdSumVerdict::Kind::FailureWitness;
      out.failure_x = x;
      out.note = "sum of images is exactly 0; pd is unsatisfiable";
      return false;
    }
    try {
      if (Value::eq(s.val(), min_val(z))) return pd_check(z, z);
      if (constructive) {
        PdWitness w = pd_witness(spec, x);
        if (w.kind != PdWitness::Kind::Witness) return true;
        std::vector<LaurentSeries> zp;
        for (size_t i = 0; i < n; ++i) zp.push_back(spec.fs[i].eval(w.y[i]));
        if (pd_check(z, zp)) return true;
        out.kind = PdSumVerdict::Kind::FailureWitness;
        out.failure_x = x;
        out.note = "constructive witness failed pd";
        return false;
      }
      // Bounded search over a small replacement pool.
      std::vector<LaurentSeries> pool = {
          LaurentSeries::zero(p), LaurentSeries::one(p),
          LaurentSeries::monomial(p, 1, 1), -s, s};
      for (const auto& cand : pool) {
        for (size_t pos = 0; pos < n; ++pos) {
          std::vector<LaurentSeries> y(n, LaurentSeries::zero(p));
          y[pos] = cand;
          std::vector<LaurentSeries> zp;
          for (size_t i = 0; i < n; ++i) zp.push_back(spec.fs[i].eval(y[i]));
          if (pd_check(z, zp)) return true;
        }
      }
      out.kind = PdSumVerdict::Kind::FailureWitness;
      out.failure_x = x;
      out.note = "bounded witness search exhausted";
      return false;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UndecidableValue) {
        ++out.degenerate;
        return true;  // undecidable at this precision; flagged, not judged
      }
      throw;
    }
  };

  // Adversarial pool: cancellations that random tuples rarely hit.
  std::vector<LaurentSeries> elems = {
      LaurentSeries::one(p), LaurentSeries::monomial(p, 1, 1),
      LaurentSeries::monomial(p, 1, -1)};
  std::vector<std::vector<LaurentSeries>> pool;
  pool.push_back(std::vector<LaurentSeries>(n, LaurentSeries::zero(p)));
  for (const auto& a : elems) {
    pool.push_back(std::vector<LaurentSeries>(n, a));
    if (n >= 2) {
      std::vector<LaurentSeries> t(n, LaurentSeries::zero(p));
      t[0] = a;
      t[1] = -a;
      pool.push_back(t);
    }
  }
  for (const auto& x : pool)
    if (!judge(x)) return out;

  SeriesSampler gen(p, seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<LaurentSeries> x;
    x.reserve(n);
    for (size_t i = 0; i < n; ++i) x.push_back(gen.series(-4, 4, prec));
    if (!judge(x)) return out;
  }
  return out;
}

PdBothReadings pd_both_readings(std::int64_t p, int n, int samples,
                                std::uint64_t seed, std::int64_t prec) {
  PdBothReadings out{
      pd_sum_check(PolygroupSpec::wp_twist(p, 1), samples, seed, prec),
      pd_sum_check(PolygroupSpec::wp_twist(p, n), samples, seed, prec),
      "the written statement names the level-1 polygroup while the "
      "surrounding construction is at level " +
          std::to_string(n) + "; both verdicts reported"};
  return out;
}

FundamentalIdentityReport fundamental_identity_report(const FieldModelDesc& m) {
  FundamentalIdentityReport r{};
  if (m.kind == FieldModelDesc::Kind::Laurent) {
    // [K : K^p] = p with basis 1, t, ..., t^(p-1); (Z : pZ) = p; F_p perfect.
    r.p_degree = m.p;
    r.ramification_count = m.p;
    r.residue_p_degree = 1;
  } else {
    // Divisible value group: (Q : pQ) = 1; the p-degree sits in the residue.
    r.p_degree = m.residue_pdeg;
    r.ramification_count = 1;
    r.residue_p_degree = m.residue_pdeg;
  }
  r.holds = r.p_degree == r.ramification_count * r.residue_p_degree;
  return r;
}

}  // namespace valfield
