#pragma once

#include <cstdint>
#include <vector>

#include "heegner/bignum.hpp"
#include "heegner/qseries.hpp"
#include "heegner/quadforms.hpp"

namespace heegner {

/// j_p^* = q^{-1} + 0 + a_1 q + ..., the Hauptmodul of Gamma_0(p)^*.
struct HauptmodulSeries {
    long p = 0;
    ExactSeries series{1, 1, Rational(0)};
};

/// (p - 1) | 24, where the eta-quotient formula applies.
bool hauptmodul_formula_known(long p);

HauptmodulSeries qexp(long p, std::int64_t trunc);

/// Extension hook for primes without a closed formula: wraps an externally
/// computed expansion after checking q^{-1} + 0 + O(q) with integer coefficients.
/// Such a series cannot be lengthened, so evaluations may hit ConvergenceFailure.
HauptmodulSeries from_expansion(long p, ExactSeries series);

/// t_m = sum_k coeffs[k] t^k with t_m(t) = q^{-m} + O(q).
struct FaberPoly {
    long m = 0;
    std::vector<Rational> coeffs;

    ExactSeries apply(const ExactSeries& t) const;
    BigComplex operator()(const BigComplex& t) const;
};

/// Faber polynomial of any series q^{-1} + c_0 + O(q); needs trunc >= m + 2.
FaberPoly faber_of(const ExactSeries& t, long m);
FaberPoly faber(const HauptmodulSeries& h, long m);

/// j = E_4^3 / Delta.
ExactSeries classical_j(std::int64_t trunc);
/// Faber polynomial J_m of J = j - 744.
FaberPoly classical_faber(long m);

/// Ascends alpha through Gamma_0(p)^* using tau -> tau + k, tau -> -1/(p tau)
/// and tau -> tau / (+-p tau + 1) until no step raises Im by a relative 1e-30.
BigComplex reduce_point(const BigComplex& alpha, long p);

/// alpha_Q = (-b + i sqrt(d)) / (2a).
BigComplex heegner_point(const ClassRep& rep, unsigned bits);

/// j_p^*(tau) at a point already reduced (or any point, with more terms). The
/// series is lengthened when needed until eight consecutive trailing terms fall
/// below 2^{-bits-20} max(1, |sum|); at most 10^4 terms.
BigComplex evaluate_hauptmodul(const HauptmodulSeries& h, const BigComplex& tau, unsigned bits);

/// j_p^*(alpha_Q), evaluated at the reduced point.
BigComplex evaluate_cm(const HauptmodulSeries& h, const ClassRep& rep, unsigned bits);

/// |j_p^*(W_p tau) - j_p^*(tau)| relative, an a-posteriori check on an evaluation.
BigReal fricke_residual(const HauptmodulSeries& h, const BigComplex& tau, unsigned bits);

inline constexpr std::int64_t max_cm_terms = 10000;

} // namespace heegner
