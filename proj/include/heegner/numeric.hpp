#pragma once

#include "heegner/bignum.hpp"
#include "heegner/qseries.hpp"

namespace heegner {

/// exp(2 pi i tau / scale).
BigComplex q_power(const BigComplex& tau, std::int64_t scale, unsigned bits);

/// Value of sum c_k q^{k/s} at tau using every stored coefficient. The last
/// stored terms must be negligible (below 2^{-bits-10} relative to the sum),
/// otherwise ConvergenceFailure is raised so the caller can extend the series.
BigComplex evaluate(const ExactSeries& f, const BigComplex& tau, unsigned bits);

/// |a - b| / max(|a|, |b|, 1).
BigReal relative_residual(const BigComplex& a, const BigComplex& b);

} // namespace heegner
