#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>

#include <mpfr.h>

#include "heegner/rational.hpp"

namespace heegner {

inline constexpr unsigned default_precision_bits = 256;

/// Real number at a fixed binary precision, owned via RAII over mpfr_t.
/// Binary operations produce the smaller precision of their operands.
class BigReal {
public:
    explicit BigReal(unsigned bits = default_precision_bits);
    BigReal(long value, unsigned bits);
    BigReal(const Integer& value, unsigned bits);
    BigReal(const Rational& value, unsigned bits);
    static BigReal from_string(const std::string& decimal, unsigned bits);
    static BigReal pi(unsigned bits);

    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    unsigned bits() const noexcept { return static_cast<unsigned>(mpfr_get_prec(value_)); }
    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get() noexcept { return value_; }

    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }
    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Nearest integer (ties away from zero).
    Integer round() const;
    /// Scientific notation with the given count of significant digits (0 = all digits the precision supports).
    std::string to_string(int digits = 0) const;

    BigReal& operator+=(const BigReal& o);
    BigReal& operator-=(const BigReal& o);
    BigReal& operator*=(const BigReal& o);
    BigReal& operator/=(const BigReal& o);
    BigReal operator-() const;

    friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
    friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
    friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
    friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

private:
    mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow2(long e, unsigned bits);
BigReal pow10(long e, unsigned bits);

/// Complex number as a pair of BigReal parts.
class BigComplex {
public:
    explicit BigComplex(unsigned bits = default_precision_bits) : re_(bits), im_(bits) {}
    BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(long re, unsigned bits) : re_(re, bits), im_(bits) {}
    BigComplex(const Rational& re, unsigned bits) : re_(re, bits), im_(bits) {}

    const BigReal& real() const noexcept { return re_; }
    const BigReal& imag() const noexcept { return im_; }
    BigReal& real() noexcept { return re_; }
    BigReal& imag() noexcept { return im_; }

    unsigned bits() const noexcept { return std::min(re_.bits(), im_.bits()); }
    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

    BigComplex& operator+=(const BigComplex& o);
    BigComplex& operator-=(const BigComplex& o);
    BigComplex& operator*=(const BigComplex& o);
    BigComplex& operator/=(const BigComplex& o);
    BigComplex& operator*=(const BigReal& o);
    BigComplex& operator*=(const Rational& o);
    BigComplex operator-() const { return {-re_, -im_}; }

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
    friend BigComplex operator*(BigComplex a, const Rational& b) { return a *= b; }
    friend BigComplex operator*(const Rational& b, BigComplex a) { return a *= b; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

private:
    BigReal re_;
    BigReal im_;
};

BigComplex conj(const BigComplex& z);
BigReal norm(const BigComplex& z);
BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal branch.
BigComplex log(const BigComplex& z);
/// Principal branch: argument in (-pi/2, pi/2].
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
/// e(x) = exp(2 pi i x) for rational x, exact reduction of x modulo 1 first.
BigComplex unit_root(const Rational& x, unsigned bits);
BigComplex parse_complex(const std::string& text, unsigned bits);

} // namespace heegner
