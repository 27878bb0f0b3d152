#include "heegner/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heegner/rational.hpp"

namespace heegner {

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    if (a % 2 == 0 && n % 2 == 0)
        return 0;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        std::int64_t a8 = pos_mod(a, 8);
        if (a8 == 3 || a8 == 5)
            result = -result;
    }
    // Jacobi symbol (a/n) for odd positive n.
    a = pos_mod(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t n8 = n % 8;
            if (n8 == 3 || n8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw std::domain_error("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(std::int64_t n)
{
    if (n < 0)
        return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> lo, hi;
    n = n < 0 ? -n : n;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d)
                hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

bool is_fundamental(std::int64_t D)
{
    if (D == 0 || D == 1)
        return false;
    auto squarefree = [](std::int64_t m) {
        m = m < 0 ? -m : m;
        for (std::int64_t q = 2; q * q <= m; ++q)
            if (m % (q * q) == 0)
                return false;
        return true;
    };
    std::int64_t r = pos_mod(D, 4);
    if (r == 1)
        return squarefree(D);
    if (r == 0) {
        std::int64_t m = D / 4;
        std::int64_t m4 = pos_mod(m, 4);
        return (m4 == 2 || m4 == 3) && squarefree(m);
    }
    return false;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t g = m, x = 0, x1 = 1, r = pos_mod(a, m);
    std::int64_t rr = r;
    while (rr != 0) {
        std::int64_t q = g / rr;
        std::int64_t t = g - q * rr;
        g = rr;
        rr = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1)
        throw std::domain_error("not invertible modulo m");
    return pos_mod(x, m);
}

bool is_square_mod(std::int64_t n, std::int64_t m)
{
    std::int64_t t = pos_mod(n, m);
    for (std::int64_t x = 0; x < m; ++x)
        if ((x * x) % m == t)
            return true;
    return false;
}

} // namespace heegner
