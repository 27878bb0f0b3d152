#include "heegner/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace heegner {

std::string to_fraction_string(const Rational& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_fraction(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: " + s);
    r.canonicalize();
    return r;
}

Rational binomial(const Rational& x, long s)
{
    if (s < 0)
        return Rational(0);
    Rational num(1);
    Rational fact(1);
    for (long i = 0; i < s; ++i) {
        num *= x - i;
        fact *= i + 1;
    }
    return num / fact;
}

bool is_integer(const Rational& x)
{
    return x.get_den() == 1;
}

long two_pow_s(long n, long p)
{
    return std::gcd(n, p) == p ? 2 : 1;
}

} // namespace heegner
