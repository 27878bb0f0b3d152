#pragma once

#include <cstdint>
#include <vector>

namespace heegner {

/// Kronecker symbol (a/n), completely multiplicative in n, with (a/-1) = sign(a) and (a/0) = [a = ±1].
int kronecker(std::int64_t a, std::int64_t n);

bool is_square(std::int64_t n);
std::int64_t isqrt(std::int64_t n);
/// Positive divisors in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);
/// Fundamental discriminant test for D (positive or negative).
bool is_fundamental(std::int64_t D);
/// Inverse of a modulo m (gcd(a, m) = 1).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
/// n is a square modulo m.
bool is_square_mod(std::int64_t n, std::int64_t m);

} // namespace heegner
