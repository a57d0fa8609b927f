#include "valfield/poly.hpp"

#include <algorithm>
#include <deque>

namespace valfield {

AdditivePoly<LaurentSeries> wp_poly(std::int64_t p) {
  return AdditivePoly<LaurentSeries>(
      p, {LaurentSeries::monomial(p, -1, 0), LaurentSeries::one(p)});
}

AdditivePoly<LaurentSeries> wp_poly_level(std::int64_t p, int level) {
  if (level < 1) fail(ErrorCode::BadArgument, "level must be >= 1");
  std::vector<LaurentSeries> coeffs(static_cast<size_t>(level) + 1,
                                    LaurentSeries::zero(p));
  coeffs[0] = LaurentSeries::monomial(p, -1, 0);
  coeffs[static_cast<size_t>(level)] = LaurentSeries::one(p);
  return AdditivePoly<LaurentSeries>(p, std::move(coeffs));
}

LaurentSeries SeriesSampler::series(std::int64_t vmin, std::int64_t vmax,
                                    std::int64_t prec) {
  std::int64_t v = vmin + below(vmax - vmin + 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;
  if (v < prec) terms.push_back({v, 1 + below(p_ - 1)});
  for (std::int64_t e = v + 1; e < prec; ++e) {
    std::int64_t c = below(p_);
    if (c != 0) terms.push_back({e, c});
  }
  return LaurentSeries::with_prec(p_, std::move(terms), prec);
}

AdditivityVerdict check_additive(const GeneralPoly<LaurentSeries>& f,
                                 int samples, std::uint64_t seed) {
  if (f.as_additive().has_value()) return {true, std::nullopt};

  const std::int64_t p = f.prime();
  auto is_witness = [&](const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries diff = f.eval(a + b) - (f.eval(a) + f.eval(b));
    return !diff.is_zero_to_prec();
  };

  std::vector<LaurentSeries> pool = {
      LaurentSeries::zero(p),
      LaurentSeries::one(p),
      LaurentSeries::monomial(p, 1, 1),
      LaurentSeries::monomial(p, 1, -1),
      LaurentSeries::exact(p, {{0, 1}, {1, 1}}),
      LaurentSeries::monomial(p, 1, 2),
  };
  if (p > 2) pool.push_back(LaurentSeries::monomial(p, 2, 0));
  for (const auto& a : pool)
    for (const auto& b : pool)
      if (is_witness(a, b)) return {false, std::make_pair(a, b)};

  SeriesSampler gen(p, seed);
  for (int s = 0; s < samples; ++s) {
    LaurentSeries a = gen.series(-3, 3, 8);
    LaurentSeries b = gen.series(-3, 3, 8);
    if (is_witness(a, b)) return {false, std::make_pair(a, b)};
  }
  return {false, std::nullopt};
}

namespace {

constexpr std::int64_t kInf = LaurentSeries::kInfExp;

struct AdditiveShape {
  std::vector<int> idx;           // indices with nonzero coefficient
  std::vector<std::int64_t> vc;   // their valuations
  std::vector<std::int64_t> pw;   // p^i
  std::vector<Fp> lead;           // leading coefficients
};

AdditiveShape shape_of(const AdditivePoly<LaurentSeries>& f) {
  AdditiveShape s;
  std::int64_t q = 1;
  for (size_t i = 0; i < f.coeffs().size(); ++i, q *= f.prime()) {
    const LaurentSeries& c = f.coeffs()[i];
    if (c.is_exactly_zero()) continue;
    if (c.is_zero_to_prec())
      fail(ErrorCode::PrecisionExhausted,
           "coefficient zero to precision; polynomial shape undecidable");
    s.idx.push_back(static_cast<int>(i));
    s.vc.push_back(c.val().finite_amount().num());
    s.pw.push_back(q);
    s.lead.push_back(c.leading_coeff());
  }
  if (s.idx.empty()) fail(ErrorCode::BadArgument, "zero polynomial");
  return s;
}

// min_i v(c_i) + p^i * w — the cheapest value f can take on O(t^w) elements.
std::int64_t phi(const AdditiveShape& s, std::int64_t w) {
  std::int64_t m = kInf;
  for (size_t k = 0; k < s.idx.size(); ++k)
    m = std::min(m, s.vc[k] + s.pw[k] * w);
  return m;
}

int phi_argmin_count(const AdditiveShape& s, std::int64_t w) {
  std::int64_t m = phi(s, w);
  int n = 0;
  for (size_t k = 0; k < s.idx.size(); ++k)
    if (s.vc[k] + s.pw[k] * w == m) ++n;
  return n;
}

struct ResidualView {
  bool has_term = false;
  std::int64_t lead = 0;   // when has_term
  bool exact_zero = false;
  std::int64_t prec = kInf;  // when zero to precision
};

ResidualView view(const LaurentSeries& r) {
  ResidualView v;
  if (!r.terms().empty()) {
    v.has_term = true;
    v.lead = r.terms().front().exp;
  } else if (r.is_exact()) {
    v.exact_zero = true;
  } else {
    v.prec = *r.prec();
  }
  return v;
}

bool viable_at(const ResidualView& v, std::int64_t bound) {
  if (v.exact_zero) return true;
  if (v.has_term) return v.lead >= bound;
  if (v.prec >= bound) return true;
  fail(ErrorCode::PrecisionExhausted,
       "input precision too small to decide a digit branch");
}

struct Branch {
  LaurentSeries x;
  LaurentSeries r;  // c - f(x)
  std::int64_t level;
};

}  // namespace

AdditiveSolveResult additive_solve(const AdditivePoly<LaurentSeries>& f,
                                   const LaurentSeries& c, std::int64_t prec) {
  const std::int64_t p = f.prime();
  AdditiveShape s = shape_of(f);
  const std::int64_t goal = prec;

  AdditiveSolveResult out;
  Value best = Value::finite(Rational(-kInf));

  const bool kernel_mode =
      c.is_zero_to_prec() && (c.is_exact() || *c.prec() >= goal);
  std::int64_t vtarget = 0;
  if (!kernel_mode) {
    if (c.is_zero_to_prec())
      fail(ErrorCode::PrecisionExhausted,
           "target is zero to a precision below the requested goal");
    vtarget = c.val().finite_amount().num();
    best = c.val();  // achieved by x = 0
  }

  // Candidate leading exponents for nonzero solutions.
  std::vector<std::int64_t> cands;
  auto consider = [&](std::int64_t w) {
    std::int64_t ph = phi(s, w);
    if (!kernel_mode && ph > vtarget) return;
    bool ok = phi_argmin_count(s, w) >= 2 || (!kernel_mode && ph == vtarget);
    if (ok && std::find(cands.begin(), cands.end(), w) == cands.end())
      cands.push_back(w);
  };
  // Slopes where two monomials of f tie.
  for (size_t a = 0; a < s.idx.size(); ++a)
    for (size_t b = a + 1; b < s.idx.size(); ++b) {
      std::int64_t dv = s.vc[a] - s.vc[b];
      std::int64_t dp = s.pw[b] - s.pw[a];
      if (dp != 0 && dv % dp == 0) consider(dv / dp);
    }
  // Levels where a single monomial meets the target.
  if (!kernel_mode)
    for (size_t k = 0; k < s.idx.size(); ++k) {
      std::int64_t d = vtarget - s.vc[k];
      if (d % s.pw[k] == 0) consider(d / s.pw[k]);
    }
  std::sort(cands.begin(), cands.end());

  auto note_best = [&](const LaurentSeries& r) {
    ResidualView v = view(r);
    if (v.has_term) {
      Value got = Value::finite(Rational(v.lead));
      if (best.is_finite() && got.finite_amount() > best.finite_amount())
        best = got;
    }
  };

  const size_t branch_cap = static_cast<size_t>(f.degree() + 1) * p * 2 + 32;

  for (std::int64_t w : cands) {
    std::deque<Branch> work;
    for (std::int64_t a = 1; a < p; ++a) {
      LaurentSeries x = LaurentSeries::monomial(p, a, w);
      Branch br{x, c - f.eval(x), w + 1};
      if (viable_at(view(br.r), phi(s, br.level)))
        work.push_back(std::move(br));
      else
        note_best(br.r);
    }
    while (!work.empty()) {
      if (work.size() > branch_cap)
        fail(ErrorCode::RootFindingUnsupported,
             "digit search branch explosion");
      Branch br = std::move(work.front());
      work.pop_front();
      if (phi(s, br.level) >= goal) {
        if (view(br.r).exact_zero)
          out.roots.push_back(br.x);
        else
          out.roots.push_back(br.x.truncated(br.level));
        continue;
      }
      for (std::int64_t a = 0; a < p; ++a) {
        Branch next = br;
        if (a != 0) {
          LaurentSeries d = LaurentSeries::monomial(p, a, br.level);
          next.x = br.x + d;
          next.r = br.r - f.eval(d);
        }
        next.level = br.level + 1;
        if (viable_at(view(next.r), phi(s, next.level)))
          work.push_back(std::move(next));
        else
          note_best(next.r);
      }
    }
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const LaurentSeries& a, const LaurentSeries& b) {
              const auto& ta = a.terms();
              const auto& tb = b.terms();
              for (size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
                if (ta[i].exp != tb[i].exp) return ta[i].exp < tb[i].exp;
                if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
              }
              return ta.size() < tb.size();
            });
  out.best_achieved = best;
  return out;
}

std::vector<LaurentSeries> kernel(const AdditivePoly<LaurentSeries>& f,
                                  std::int64_t prec) {
  const std::int64_t p = f.prime();
  const LaurentSeries& c0 = f.coeffs().front();
  if (c0.is_zero_to_prec() && !c0.is_exact())
    fail(ErrorCode::InseparableUnresolvable,
         "cannot decide separability: lowest coefficient is zero to precision");

  if (c0.is_exactly_zero()) {
    int nonzero = 0;
    for (const auto& c : f.coeffs())
      if (!c.is_exactly_zero()) ++nonzero;
    if (nonzero <= 1) return {LaurentSeries::zero(p)};  // monomial: only 0
    // f(X) = h(X^p): kernel(f) = p-th roots (in K) of kernel(h).
    std::vector<LaurentSeries> shifted(f.coeffs().begin() + 1,
                                       f.coeffs().end());
    AdditivePoly<LaurentSeries> h(p, std::move(shifted));
    std::vector<LaurentSeries> out;
    for (const LaurentSeries& k : kernel(h, prec)) {
      try {
        out.push_back(k.pth_root());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonPthPower) throw;
        // that root of h has no p-th root in K; it contributes nothing
      }
    }
    return out;
  }

  AdditiveSolveResult res = additive_solve(f, LaurentSeries::zero(p), prec);
  std::vector<LaurentSeries> out;
  out.push_back(LaurentSeries::zero(p));
  for (auto& r : res.roots) out.push_back(std::move(r));
  return out;
}

// Coefficients of f(x + X) via binomial expansion mod p.
std::vector<LaurentSeries> taylor_shift(const GeneralPoly<LaurentSeries>& f,
                                        const LaurentSeries& x) {
  const std::int64_t p = f.prime();
  const size_t n = f.coeffs().size();
  // binomials mod p
  std::vector<std::vector<std::int64_t>> binom(n, std::vector<std::int64_t>(n, 0));
  for (size_t k = 0; k < n; ++k) {
    binom[k][0] = 1;
    for (size_t j = 1; j <= k; ++j)
      binom[k][j] = (binom[k - 1][j - 1] + (j <= k - 1 ? binom[k - 1][j] : 0)) % p;
  }
  std::vector<LaurentSeries> xpow;
  xpow.push_back(LaurentSeries::one(p));
  for (size_t k = 1; k < n; ++k) xpow.push_back(xpow.back() * x);

  std::vector<LaurentSeries> d(n, LaurentSeries::zero(p));
  for (size_t j = 0; j < n; ++j)
    for (size_t k = j; k < n; ++k) {
      if (binom[k][j] == 0) continue;
      LaurentSeries scale = LaurentSeries::monomial(p, binom[k][j], 0);
      d[j] = d[j] + scale * f.coeffs()[k] * xpow[k - j];
    }
  return d;
}

namespace {

// min_{j>=1} v(d_j) + j*w; kInf if all higher coefficients vanish.
std::int64_t psi(const std::vector<LaurentSeries>& d, std::int64_t w) {
  std::int64_t m = kInf;
  for (size_t j = 1; j < d.size(); ++j) {
    if (d[j].is_zero_to_prec()) {
      if (!d[j].is_exact())
        fail(ErrorCode::PrecisionExhausted, "shifted coefficient undecidable");
      continue;
    }
    std::int64_t v = d[j].val().finite_amount().num();
    m = std::min(m, v + static_cast<std::int64_t>(j) * w);
  }
  return m;
}

}  // namespace

std::vector<LaurentSeries> general_roots(const GeneralPoly<LaurentSeries>& f,
                                         std::int64_t prec) {
  const std::int64_t p = f.prime();
  const std::int64_t n = f.degree();
  if (n < 1) return {};
  for (const auto& c : f.coeffs())
    if (c.is_zero_to_prec() && !c.is_exact())
      fail(ErrorCode::PrecisionExhausted, "coefficient zero to precision");

  // Newton polygon: candidate integer slopes where the minimum ties.
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;  // (j, v(a_j))
  for (size_t j = 0; j < f.coeffs().size(); ++j)
    if (!f.coeffs()[j].is_exactly_zero())
      pts.push_back({static_cast<std::int64_t>(j),
                     f.coeffs()[j].val().finite_amount().num()});

  std::vector<std::int64_t> cands;
  auto mu = [&](std::int64_t w) {
    std::int64_t m = kInf;
    for (auto& [j, v] : pts) m = std::min(m, v + j * w);
    return m;
  };
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) {
      std::int64_t dv = pts[a].second - pts[b].second;
      std::int64_t dj = pts[b].first - pts[a].first;
      if (dj == 0 || dv % dj != 0) continue;
      std::int64_t w = dv / dj;
      if (pts[a].second + pts[a].first * w != mu(w)) continue;
      if (std::find(cands.begin(), cands.end(), w) == cands.end())
        cands.push_back(w);
    }
  std::sort(cands.begin(), cands.end());

  std::vector<LaurentSeries> roots;
  if (f.coeffs()[0].is_exactly_zero()) roots.push_back(LaurentSeries::zero(p));

  struct St {
    LaurentSeries x;
    std::int64_t level;
  };
  const size_t branch_cap = static_cast<size_t>(n + 1) * p * 4 + 64;

  for (std::int64_t w : cands) {
    std::deque<St> work;
    for (std::int64_t a = 1; a < p; ++a)
      work.push_back({LaurentSeries::monomial(p, a, w), w + 1});
    while (!work.empty()) {
      if (work.size() > branch_cap)
        fail(ErrorCode::RootFindingUnsupported, "digit search branch explosion");
      St st = std::move(work.front());
      work.pop_front();
      std::vector<LaurentSeries> d = taylor_shift(f, st.x);
      ResidualView r0 = view(d[0]);
      std::int64_t bound = psi(d, st.level);
      bool viable;
      if (r0.exact_zero)
        viable = true;
      else if (r0.has_term)
        viable = r0.lead >= bound;
      else if (r0.prec >= bound)
        viable = true;
      else
        fail(ErrorCode::PrecisionExhausted, "digit branch undecidable");
      if (!viable) continue;
      if (bound >= prec) {
        // simple-root requirement: nonzero derivative at the root
        if (d.size() < 2 || d[1].is_zero_to_prec())
          fail(ErrorCode::RootFindingUnsupported,
               "repeated or wild root; only simple roots are supported");
        roots.push_back(r0.exact_zero ? st.x : st.x.truncated(st.level));
        continue;
      }
      for (std::int64_t a = 0; a < p; ++a) {
        LaurentSeries nx =
            a == 0 ? st.x : st.x + LaurentSeries::monomial(p, a, st.level);
        work.push_back({std::move(nx), st.level + 1});
      }
    }
  }

  // Preimage computations require a full rational split into simple roots.
  if (static_cast<std::int64_t>(roots.size()) != n)
    fail(ErrorCode::RootFindingUnsupported,
         "polynomial does not split into simple roots over F_p((t))");
  std::sort(roots.begin(), roots.end(),
            [](const LaurentSeries& a, const LaurentSeries& b) {
              const auto& ta = a.terms();
              const auto& tb = b.terms();
              for (size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
                if (ta[i].exp != tb[i].exp) return ta[i].exp < tb[i].exp;
                if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
              }
              return ta.size() < tb.size();
            });
  return roots;
}

}  // namespace valfield
