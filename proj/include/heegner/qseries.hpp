#pragma once

#include <cstdint>

#include <json.hpp>

#include "heegner/series.hpp"

namespace heegner {

using ExactSeries = Series<Rational>;
using NumSeries = Series<BigComplex>;

// Generators take `trunc` as an exclusive bound on integer exponents.

ExactSeries exact_zero(std::int64_t scale, std::int64_t trunc);
ExactSeries exact_constant(const Rational& c, std::int64_t trunc);
/// Series from integer exponents: coefficient list starting at q^first.
ExactSeries exact_from(std::int64_t first, const std::vector<Rational>& coeffs, std::int64_t trunc);

ExactSeries theta(std::int64_t trunc);
/// Normalized Eisenstein series E_k, k even and >= 4.
ExactSeries eisenstein(int k, std::int64_t trunc);
/// Euler product prod (1 - q^n), via the pentagonal number theorem.
ExactSeries euler_product(std::int64_t trunc);
ExactSeries delta(std::int64_t trunc);
/// (eta(tau)/eta(p tau))^e including the q^{e(1-p)/24} prefactor; the scale is
/// the least s making that exponent a multiple of 1/s.
ExactSeries eta_quotient(std::int64_t p, std::int64_t e, std::int64_t trunc);

/// B_k with B_1 = -1/2. Table of even indices is built once.
Rational bernoulli(int k);

/// [f,g]_n = sum_{r+s=n} (-1)^r C(n+k-1, s) C(n+l-1, r) D^r f D^s g.
ExactSeries rankin_cohen(const ExactSeries& f, const Rational& k, const ExactSeries& g, const Rational& l, int n);

nlohmann::json to_json(const ExactSeries& f);
ExactSeries series_from_json(const nlohmann::json& j);

} // namespace heegner
