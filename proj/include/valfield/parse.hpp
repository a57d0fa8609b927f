#pragma once

#include <string>
#include <variant>
#include <vector>

#include "valfield/pdsum.hpp"

namespace valfield {

// Canonical literals; parse(print(x)) == x and printing normalizes.
std::string print_series(const LaurentSeries& x);
std::string print_hahn(const HahnSeries& x);
std::string print_poly(const GeneralPoly<LaurentSeries>& f);

// "GF(<p>)[[t]]: <term> (+ <term>)* (+ O(t^<N>))?"
LaurentSeries parse_series(const std::string& text);

// "GF(<p>)[[s^Q; t^(1/p^<M>)]]: <coeffexpr>*s^(<rational>) (+ ...)"
HahnSeries parse_hahn(const std::string& text,
                      std::int64_t denom_cap = HahnSeries::kDefaultDenomCap);

// Either of the two, decided by the header.
std::variant<LaurentSeries, HahnSeries> parse_field_elem(
    const std::string& text,
    std::int64_t denom_cap = HahnSeries::kDefaultDenomCap);

// "wp(X)" and sums of <coeff>*X^<k>; coefficients in the series grammar.
GeneralPoly<LaurentSeries> parse_poly(const std::string& text, std::int64_t p);

// Semicolon-separated additive polynomials, e.g. "wp(X); t*X^2".
PolygroupSpec parse_polygroup(const std::string& text, std::int64_t p,
                              int level = 1);

}  // namespace valfield
