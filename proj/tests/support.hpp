#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "heegner/qseries.hpp"

namespace heegner::testing {

inline ExactSeries series_of(std::int64_t first, std::vector<long> coeffs, std::int64_t trunc, std::int64_t scale = 1)
{
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return ExactSeries(scale, first, std::move(c), trunc, Rational(0));
}

/// Random truncated series with small rational coefficients.
class SeriesGen {
public:
    explicit SeriesGen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational rational()
    {
        return Rational(integer(-9, 9), integer(1, 4));
    }

    ExactSeries series(std::int64_t scale, std::int64_t first_lo, std::int64_t first_hi, std::int64_t len)
    {
        std::int64_t first = integer(first_lo, first_hi);
        std::vector<Rational> c(static_cast<std::size_t>(len));
        for (auto& x : c) {
            x = rational();
            x.canonicalize();
        }
        if (sgn(c[0]) == 0)
            c[0] = 1;
        return ExactSeries(scale, first, std::move(c), first + len, Rational(0));
    }

    /// 1 + O(q) unit series.
    ExactSeries unit(std::int64_t len)
    {
        ExactSeries s = series(1, 0, 0, len);
        std::vector<Rational> c = s.coeffs();
        c[0] = 1;
        return ExactSeries(1, 0, std::move(c), len, Rational(0));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace heegner::testing
