#include "valfield/decomp.hpp"

namespace valfield {

std::vector<LaurentSeries> frobenius_parts(const LaurentSeries& x) {
  const std::int64_t p = x.prime();
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> buckets(
      static_cast<size_t>(p));
  for (const auto& t : x.terms()) {
    std::int64_t i = floor_mod(t.exp, p);
    buckets[static_cast<size_t>(i)].push_back(
        {floor_div(t.exp - i, p), t.coeff});  // (e - i)/p; c^(1/p) = c
  }
  std::vector<LaurentSeries> parts;
  parts.reserve(static_cast<size_t>(p));
  for (std::int64_t i = 0; i < p; ++i) {
    if (x.is_exact()) {
      parts.push_back(LaurentSeries::exact(p, std::move(buckets[i])));
    } else {
      std::int64_t prec_i = ceil_div(*x.prec() - i, p);
      parts.push_back(
          LaurentSeries::with_prec(p, std::move(buckets[i]), prec_i));
    }
  }
  return parts;
}

LaurentSeries wp_solve(const LaurentSeries& m, int level,
                       std::optional<std::int64_t> working_prec) {
  const std::int64_t p = m.prime();
  if (m.is_exactly_zero()) return LaurentSeries::zero(p);
  Value v = m.val();
  if (!Value::gt(v, Value::finite(Rational(0))))
    fail(ErrorCode::NonpositiveValue,
         "wp_solve needs v(m) > 0, got v = " + v.str());

  std::int64_t target;
  if (m.prec())
    target = *m.prec();
  else
    target = working_prec.value_or(64);

  LaurentSeries u = LaurentSeries::zero(p).truncated(target);
  LaurentSeries pw = m.truncated(target);
  while (!pw.is_zero_to_prec()) {
    u = u - pw;
    pw = pw.frobenius(level).truncated(target);
  }
  return u;
}

LaurentSeries ASDecomposition::reexpand() const {
  const std::int64_t p = y.prime();
  LaurentSeries acc = y;
  if (henselian) acc = acc + LaurentSeries::monomial(p, j, 0);
  acc = acc + parts[0].frobenius(level) - parts[0];
  for (size_t i = 1; i < parts.size(); ++i)
    acc = acc + LaurentSeries::monomial(p, 1, static_cast<std::int64_t>(i)) *
                    parts[i].frobenius(level);
  return acc;
}

ASDecomposition as_decompose(const LaurentSeries& x, int level) {
  if (level < 1) fail(ErrorCode::BadArgument, "level must be >= 1");
  const std::int64_t p = x.prime();
  std::int64_t P = 1;
  for (int i = 0; i < level; ++i) P *= p;

  ASDecomposition d{.y = LaurentSeries::zero(p)};
  d.level = level;
  d.parts.assign(static_cast<size_t>(P), LaurentSeries::zero(p));

  LaurentSeries rem = x;
  // Each pass cancels the leading term against t^l (j z)^P, raising the
  // remainder's valuation by at least 1; at most -v(x) passes.
  while (true) {
    Value v = rem.val();
    if (!Value::lt(v, Value::finite(Rational(0)))) break;
    ++d.iterations;
    std::int64_t vx = v.finite_amount().num();
    std::int64_t l = floor_mod(vx, P);
    std::int64_t vz = floor_div(vx - l, P);
    std::int64_t j = rem.leading_coeff().value();
    LaurentSeries jz = LaurentSeries::monomial(p, j, vz);
    d.parts[static_cast<size_t>(l)] = d.parts[static_cast<size_t>(l)] + jz;
    if (l > 0) {
      rem = rem - LaurentSeries::monomial(p, 1, l) * jz.frobenius(level);
    } else {
      rem = rem - (jz.frobenius(level) - jz);
    }
  }
  d.y = rem;
  return d;
}

ASDecomposition as_decompose_henselian(
    const LaurentSeries& x, int level,
    std::optional<std::int64_t> working_prec) {
  ASDecomposition d = as_decompose(x, level);
  d.henselian = true;
  d.j = d.y.residue().value();
  LaurentSeries m = d.y - LaurentSeries::monomial(x.prime(), d.j, 0);
  LaurentSeries u = wp_solve(m, level, working_prec);
  d.parts[0] = d.parts[0] + u;
  d.y = LaurentSeries::zero(x.prime());
  return d;
}

}  // namespace valfield
