#include "valfield/hahn.hpp"

#include <algorithm>
#include <map>

namespace valfield {

std::strong_ordering CompositeValue::cmp(const CompositeValue& a,
                                         const CompositeValue& b) {
  if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite) {
    if (auto c = a.s_ <=> b.s_; c != 0) return c;
    return a.t_ <=> b.t_;
  }
  if (a.kind_ == Kind::Infinite && b.kind_ == Kind::Infinite)
    return std::strong_ordering::equal;
  if (a.kind_ == Kind::Finite && b.kind_ == Kind::Infinite)
    return std::strong_ordering::less;
  if (a.kind_ == Kind::Infinite && b.kind_ == Kind::Finite)
    return std::strong_ordering::greater;
  // AtLeast(q) decides only against finite values with strictly smaller
  // s-component: the t-component at the bound is unconstrained.
  if (a.kind_ == Kind::AtLeast && b.kind_ == Kind::Finite && a.s_ > b.s_)
    return std::strong_ordering::greater;
  if (a.kind_ == Kind::Finite && b.kind_ == Kind::AtLeast && b.s_ > a.s_)
    return std::strong_ordering::less;
  fail(ErrorCode::UndecidableValue,
       "cannot compare " + a.str() + " with " + b.str());
}

HahnSeries HahnSeries::zero(std::int64_t p, int root_depth,
                            std::int64_t denom_cap) {
  require_prime(p);
  if (root_depth < 0 || root_depth > 40)
    fail(ErrorCode::BadArgument, "root depth out of range");
  return HahnSeries(p, root_depth, denom_cap);
}

HahnSeries HahnSeries::one(std::int64_t p, int root_depth,
                           std::int64_t denom_cap) {
  return term(p, root_depth, Rational(0), LaurentSeries::one(p), denom_cap);
}

HahnSeries HahnSeries::term(std::int64_t p, int root_depth, Rational sexp,
                            LaurentSeries coeff, std::int64_t denom_cap) {
  HahnSeries r = zero(p, root_depth, denom_cap);
  if (coeff.prime() != p)
    fail(ErrorCode::BadArgument, "coefficient characteristic mismatch");
  r.terms_.push_back({sexp, std::move(coeff)});
  r.normalize();
  return r;
}

HahnSeries HahnSeries::t_monomial(std::int64_t p, int root_depth,
                                  std::int64_t c, Rational texp, Rational sexp,
                                  std::int64_t denom_cap) {
  HahnSeries probe = zero(p, root_depth, denom_cap);
  Rational uexp = texp * Rational(probe.u_per_t_);
  if (!uexp.is_integer())
    fail(ErrorCode::RootDepthExceeded,
         "t^(" + texp.str() + ") is not representable at depth " +
             std::to_string(root_depth));
  return term(p, root_depth, sexp, LaurentSeries::monomial(p, c, uexp.num()),
              denom_cap);
}

HahnSeries HahnSeries::from_terms(std::int64_t p, int root_depth,
                                  std::vector<Term> terms,
                                  std::optional<Rational> sprec,
                                  std::int64_t denom_cap) {
  HahnSeries r = zero(p, root_depth, denom_cap);
  r.terms_ = std::move(terms);
  r.sprec_ = sprec;
  r.normalize();
  return r;
}

void HahnSeries::check_cap(const Rational& sexp) const {
  if (sexp.den() > cap_)
    fail(ErrorCode::DenominatorCapExceeded,
         "s-exponent denominator " + std::to_string(sexp.den()) +
             " exceeds cap " + std::to_string(cap_));
}

void HahnSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.sexp < b.sexp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (Term& t : terms_) {
    check_cap(t.sexp);
    if (!out.empty() && out.back().sexp == t.sexp) {
      out.back().coeff = out.back().coeff + t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::vector<Term> kept;
  kept.reserve(out.size());
  for (Term& t : out) {
    if (sprec_ && t.sexp >= *sprec_) continue;
    if (t.coeff.is_exactly_zero()) continue;
    if (t.coeff.is_zero_to_prec())
      fail(ErrorCode::PrecisionCollapse,
           "coefficient at s^(" + t.sexp.str() +
               ") is zero to precision; its valuation is undecidable");
    kept.push_back(std::move(t));
  }
  terms_ = std::move(kept);
}

void HahnSeries::check_compatible(const HahnSeries& o) const {
  if (p_ != o.p_ || depth_ != o.depth_)
    fail(ErrorCode::BadArgument,
         "mixed Hahn contexts (p or root depth differ)");
}

Value HahnSeries::sval() const {
  if (!terms_.empty()) return Value::finite(terms_.front().sexp);
  if (is_exact()) return Value::infinity();
  return Value::at_least(*sprec_);
}

Rational HahnSeries::coeff_tval(const Term& t) const {
  Value v = t.coeff.val();
  return v.finite_amount() / Rational(u_per_t_);
}

CompositeValue HahnSeries::composite_val() const {
  if (terms_.empty()) {
    if (is_exact()) return CompositeValue::infinity();
    return CompositeValue::at_least(*sprec_);
  }
  const Term& lead = terms_.front();
  return CompositeValue::finite(lead.sexp, coeff_tval(lead));
}

HahnSeries operator+(const HahnSeries& a, const HahnSeries& b) {
  a.check_compatible(b);
  HahnSeries r = HahnSeries::zero(a.p_, a.depth_, std::min(a.cap_, b.cap_));
  if (a.sprec_ && b.sprec_)
    r.sprec_ = std::min(*a.sprec_, *b.sprec_);
  else if (a.sprec_)
    r.sprec_ = a.sprec_;
  else
    r.sprec_ = b.sprec_;
  r.terms_ = a.terms_;
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  r.normalize();
  return r;
}

HahnSeries HahnSeries::operator-() const {
  HahnSeries r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

HahnSeries operator-(const HahnSeries& a, const HahnSeries& b) {
  return a + (-b);
}

HahnSeries operator*(const HahnSeries& a, const HahnSeries& b) {
  a.check_compatible(b);
  const std::int64_t cap = std::min(a.cap_, b.cap_);
  if (a.is_exactly_zero() || b.is_exactly_zero())
    return HahnSeries::zero(a.p_, a.depth_, cap);

  // s-precision propagates like the Laurent case, with the leading
  // s-exponent as the valuation floor.
  std::optional<Rational> prec;
  auto floor_of = [](const HahnSeries& x) -> std::optional<Rational> {
    if (!x.terms_.empty()) return x.terms_.front().sexp;
    return x.sprec_;  // empty exact handled above
  };
  if (a.sprec_ || b.sprec_) {
    std::optional<Rational> bound;
    if (b.sprec_) bound = *floor_of(a) + *b.sprec_;
    if (a.sprec_) {
      Rational c = *floor_of(b) + *a.sprec_;
      if (!bound || c < *bound) bound = c;
    }
    prec = bound;
  }

  HahnSeries r = HahnSeries::zero(a.p_, a.depth_, cap);
  r.sprec_ = prec;
  std::vector<HahnSeries::Term> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      Rational e = ta.sexp + tb.sexp;
      if (prec && e >= *prec) continue;
      acc.push_back({e, ta.coeff * tb.coeff});
    }
  r.terms_ = std::move(acc);
  r.normalize();
  return r;
}

HahnSeries HahnSeries::frobenius(int n) const {
  if (n < 0) fail(ErrorCode::BadArgument, "negative Frobenius power");
  std::int64_t q = ipow(p_, n);
  HahnSeries r = zero(p_, depth_, cap_);
  for (const Term& t : terms_)
    r.terms_.push_back({t.sexp * Rational(q), t.coeff.frobenius(n)});
  if (sprec_) r.sprec_ = *sprec_ * Rational(q);
  r.normalize();
  return r;
}

HahnSeries HahnSeries::pth_root(int n) const {
  if (n < 0) fail(ErrorCode::BadArgument, "negative root power");
  HahnSeries r = zero(p_, depth_, cap_);
  std::int64_t q = ipow(p_, n);
  for (const Term& t : terms_) {
    Rational e = t.sexp / Rational(q);
    check_cap(e);
    LaurentSeries c = t.coeff;
    for (int i = 0; i < n; ++i) {
      try {
        c = c.pth_root();
      } catch (const Error& err) {
        if (err.code() == ErrorCode::NonPthPower)
          fail(ErrorCode::RootDepthExceeded,
               "coefficient at s^(" + t.sexp.str() +
                   ") needs u-exponents finer than depth " +
                   std::to_string(depth_));
        throw;
      }
    }
    r.terms_.push_back({e, std::move(c)});
  }
  if (sprec_) r.sprec_ = *sprec_ / Rational(q);
  r.normalize();
  return r;
}

HahnSeries HahnSeries::truncated(Rational new_sprec) const {
  HahnSeries r = *this;
  if (!r.sprec_ || new_sprec < *r.sprec_) r.sprec_ = new_sprec;
  r.normalize();
  return r;
}

bool operator==(const HahnSeries& a, const HahnSeries& b) {
  if (a.p_ != b.p_ || a.depth_ != b.depth_ || a.sprec_ != b.sprec_ ||
      a.terms_.size() != b.terms_.size())
    return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].sexp != b.terms_[i].sexp ||
        !(a.terms_[i].coeff == b.terms_[i].coeff))
      return false;
  return true;
}

std::string HahnSeries::str() const {
  // Coefficients print in t, scaling u-exponents back by 1/p^M.
  auto coeff_str = [&](const LaurentSeries& c, bool* needs_parens) {
    std::string out;
    size_t nterms = c.terms().size();
    *needs_parens = nterms > 1 || c.prec().has_value();
    for (const auto& t : c.terms()) {
      if (!out.empty()) out += " + ";
      Rational texp = Rational(t.exp) / Rational(u_per_t_);
      if (texp.is_zero()) {
        out += std::to_string(t.coeff);
      } else {
        std::string m = "t^(" + texp.str() + ")";
        out += (t.coeff == 1) ? m : std::to_string(t.coeff) + "*" + m;
      }
    }
    if (c.prec()) {
      if (!out.empty()) out += " + ";
      Rational texp = Rational(*c.prec()) / Rational(u_per_t_);
      out += "O(t^(" + texp.str() + "))";
    }
    if (out.empty()) out = "0";
    return out;
  };

  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += " + ";
    bool parens = false;
    std::string cs = coeff_str(t.coeff, &parens);
    if (t.sexp.is_zero()) {
      out += parens ? "(" + cs + ")" : cs;
      continue;
    }
    std::string m = "s^(" + t.sexp.str() + ")";
    if (cs == "1")
      out += m;
    else if (parens)
      out += "(" + cs + ")*" + m;
    else
      out += cs + "*" + m;
  }
  if (sprec_) {
    if (!out.empty()) out += " + ";
    out += "O(s^(" + sprec_->str() + "))";
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace valfield
