#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace heegner {

/// Exact rational coefficient domain. Always kept in canonical (reduced) form.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den" with the denominator always present.
std::string to_fraction_string(const Rational& x);
Rational parse_fraction(const std::string& s);

/// C(x, s) for rational x, computed as a falling factorial over s!.
Rational binomial(const Rational& x, long s);

bool is_integer(const Rational& x);

/// n/d in canonical form (d may be negative or share factors with n).
inline Rational frac(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// 2^{s(n,p)} where s(n,p) counts prime factors of gcd(n,p); p is prime here.
long two_pow_s(long n, long p);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t pos_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace heegner
