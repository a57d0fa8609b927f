#include "valfield/laurent.hpp"

#include <algorithm>
#include <map>

namespace valfield {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UndecidableValue: return "UndecidableValue";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PrecisionCollapse: return "PrecisionCollapse";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NonPthPower: return "NonPthPower";
    case ErrorCode::RootDepthExceeded: return "RootDepthExceeded";
    case ErrorCode::DenominatorCapExceeded: return "DenominatorCapExceeded";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::NonpositiveValue: return "NonpositiveValue";
    case ErrorCode::InseparableUnresolvable: return "InseparableUnresolvable";
    case ErrorCode::RootFindingUnsupported: return "RootFindingUnsupported";
    case ErrorCode::NotPseudoConvergent: return "NotPseudoConvergent";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::AttainedMaximum: return "AttainedMaximum";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
  }
  return "Unknown";
}

LaurentSeries LaurentSeries::zero(std::int64_t p) {
  require_prime(p);
  return LaurentSeries(p, {}, std::nullopt);
}

LaurentSeries LaurentSeries::one(std::int64_t p) { return monomial(p, 1, 0); }

LaurentSeries LaurentSeries::monomial(std::int64_t p, std::int64_t coeff,
                                      std::int64_t exp) {
  require_prime(p);
  LaurentSeries r(p, {}, std::nullopt);
  std::int64_t c = floor_mod(coeff, p);
  if (c != 0) r.terms_.push_back({exp, c});
  return r;
}

LaurentSeries LaurentSeries::exact(
    std::int64_t p, std::vector<std::pair<std::int64_t, std::int64_t>> t) {
  require_prime(p);
  LaurentSeries r(p, {}, std::nullopt);
  for (auto& [e, c] : t) r.terms_.push_back({e, c});
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::with_prec(
    std::int64_t p, std::vector<std::pair<std::int64_t, std::int64_t>> t,
    std::int64_t prec) {
  require_prime(p);
  LaurentSeries r(p, {}, prec);
  for (auto& [e, c] : t) r.terms_.push_back({e, c});
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::big_o(std::int64_t p, std::int64_t prec) {
  return with_prec(p, {}, prec);
}

void LaurentSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    std::int64_t c = floor_mod(t.coeff, p_);
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff = floor_mod(out.back().coeff + c, p_);
      if (out.back().coeff == 0) out.pop_back();
    } else if (c != 0) {
      out.push_back({t.exp, c});
    }
  }
  if (prec_) {
    while (!out.empty() && out.back().exp >= *prec_) out.pop_back();
  }
  terms_ = std::move(out);
}

Value LaurentSeries::val() const {
  if (!terms_.empty()) return Value::finite(Rational(terms_.front().exp));
  if (is_exact()) return Value::infinity();
  return Value::at_least(Rational(*prec_));
}

Fp LaurentSeries::coeff_at(std::int64_t e) const {
  if (prec_ && e >= *prec_)
    fail(ErrorCode::UndecidableValue,
         "coefficient at t^" + std::to_string(e) + " is beyond O(t^" +
             std::to_string(*prec_) + ")");
  for (const Term& t : terms_)
    if (t.exp == e) return Fp(t.coeff, p_);
  return Fp(0, p_);
}

Fp LaurentSeries::leading_coeff() const {
  if (terms_.empty())
    fail(ErrorCode::UndecidableValue, "no known leading term");
  return Fp(terms_.front().coeff, p_);
}

Fp LaurentSeries::residue() const {
  if (!terms_.empty() && terms_.front().exp < 0)
    fail(ErrorCode::NegativeValue, "residue of an element of negative value");
  if (prec_ && *prec_ <= 0)
    fail(ErrorCode::UndecidableValue,
         "residue undecidable at precision O(t^" + std::to_string(*prec_) + ")");
  return coeff_at(0);
}

LaurentSeries LaurentSeries::truncated(std::int64_t new_prec) const {
  LaurentSeries r = *this;
  r.prec_ = min_prec(prec_, new_prec);
  r.normalize();
  return r;
}

std::optional<std::int64_t> LaurentSeries::min_prec(
    const std::optional<std::int64_t>& a, const std::optional<std::int64_t>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::int64_t LaurentSeries::val_floor() const {
  if (!terms_.empty()) return terms_.front().exp;
  if (prec_) return *prec_;
  return kInfExp;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.p_ != b.p_)
    fail(ErrorCode::BadArgument, "mixed characteristics in series arithmetic");
  LaurentSeries r(a.p_, {}, LaurentSeries::min_prec(a.prec_, b.prec_));
  r.terms_ = a.terms_;
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (Term& t : r.terms_) t.coeff = floor_mod(-t.coeff, p_);
  return r;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.p_ != b.p_)
    fail(ErrorCode::BadArgument, "mixed characteristics in series arithmetic");
  const std::int64_t p = a.p_;

  // Propagated precision: a*O(t^Nb) contributes from val(a)+Nb on, and
  // symmetrically; exact*exact stays exact. Exact zero annihilates.
  std::optional<std::int64_t> prec;
  if (a.is_exactly_zero() || b.is_exactly_zero()) {
    return LaurentSeries::zero(p);
  }
  if (a.prec_ || b.prec_) {
    std::int64_t bound = LaurentSeries::kInfExp;
    if (b.prec_) bound = std::min(bound, a.val_floor() + *b.prec_);
    if (a.prec_) bound = std::min(bound, b.val_floor() + *a.prec_);
    prec = bound;
  }

  std::map<std::int64_t, std::int64_t> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      std::int64_t e = ta.exp + tb.exp;
      if (prec && e >= *prec) continue;
      acc[e] = floor_mod(acc[e] + ta.coeff * tb.coeff, p);
    }
  LaurentSeries r(p, {}, prec);
  for (auto& [e, c] : acc)
    if (c != 0) r.terms_.push_back({e, c});
  return r;
}

LaurentSeries LaurentSeries::inverse(
    std::optional<std::int64_t> working_prec) const {
  if (terms_.empty()) {
    if (is_exact()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    fail(ErrorCode::UndecidableValue,
         "inverse of a possibly-zero series O(t^" + std::to_string(*prec_) + ")");
  }
  const std::int64_t k = terms_.front().exp;
  const Fp lead = Fp(terms_.front().coeff, p_);
  LaurentSeries lead_inv = monomial(p_, lead.inv().value(), -k);

  if (is_exact() && terms_.size() == 1) return lead_inv;

  // Relative precision of the answer: what the input supports, or the
  // requested working precision for exact non-monomial input.
  std::int64_t rel;
  if (prec_)
    rel = *prec_ - k;
  else
    rel = working_prec.value_or(64);
  if (rel <= 0)
    fail(ErrorCode::PrecisionCollapse, "no decidable digits in inverse");

  // u = self/lead - 1 has positive valuation; 1/(1+u) = sum (-u)^i.
  LaurentSeries u = (*this * lead_inv - one(p_)).truncated(rel);
  LaurentSeries sum = one(p_).truncated(rel);
  LaurentSeries pw = one(p_).truncated(rel);
  LaurentSeries neg_u = -u;
  while (!pw.is_zero_to_prec()) {
    pw = (pw * neg_u).truncated(rel);
    sum = sum + pw;
  }
  return sum * lead_inv;
}

LaurentSeries LaurentSeries::div(const LaurentSeries& b,
                                 std::optional<std::int64_t> working_prec) const {
  return *this * b.inverse(working_prec);
}

LaurentSeries LaurentSeries::frobenius(int n) const {
  if (n < 0) fail(ErrorCode::BadArgument, "negative Frobenius power");
  std::int64_t q = 1;
  for (int i = 0; i < n; ++i) q *= p_;
  LaurentSeries r = *this;
  for (Term& t : r.terms_) t.exp *= q;  // coefficients are fixed: c^p = c
  if (r.prec_) r.prec_ = *r.prec_ * q;
  return r;
}

LaurentSeries LaurentSeries::pow(std::int64_t k) const {
  if (k < 0) fail(ErrorCode::BadArgument, "negative power");
  LaurentSeries r = one(p_);
  LaurentSeries b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

LaurentSeries LaurentSeries::pth_root() const {
  LaurentSeries r(p_, {}, std::nullopt);
  for (const Term& t : terms_) {
    if (floor_mod(t.exp, p_) != 0)
      fail(ErrorCode::NonPthPower,
           "exponent " + std::to_string(t.exp) + " not divisible by " +
               std::to_string(p_));
    r.terms_.push_back({floor_div(t.exp, p_), t.coeff});
  }
  if (prec_) r.prec_ = ceil_div(*prec_, p_);
  r.normalize();
  return r;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.p_ != b.p_ || a.prec_ != b.prec_ || a.terms_.size() != b.terms_.size())
    return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp ||
        a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

std::string LaurentSeries::str() const {
  std::string out;
  auto term_str = [](const Term& t) {
    if (t.exp == 0) return std::to_string(t.coeff);
    std::string m = "t^" + std::to_string(t.exp);
    if (t.coeff == 1) return m;
    return std::to_string(t.coeff) + "*" + m;
  };
  for (const Term& t : terms_) {
    if (!out.empty()) out += " + ";
    out += term_str(t);
  }
  if (prec_) {
    if (!out.empty()) out += " + ";
    out += "O(t^" + std::to_string(*prec_) + ")";
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace valfield
