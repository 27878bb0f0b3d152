#include "heegner/bignum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heegner {

namespace {

unsigned clamp_bits(unsigned bits)
{
    return std::max<unsigned>(bits, MPFR_PREC_MIN);
}

void lower_precision(mpfr_ptr x, mpfr_prec_t target)
{
    if (mpfr_get_prec(x) > target)
        mpfr_prec_round(x, target, MPFR_RNDN);
}

} // namespace

BigReal::BigReal(unsigned bits)
{
    mpfr_init2(value_, clamp_bits(bits));
    mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, unsigned bits)
{
    mpfr_init2(value_, clamp_bits(bits));
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const Integer& value, unsigned bits)
{
    mpfr_init2(value_, clamp_bits(bits));
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const Rational& value, unsigned bits)
{
    mpfr_init2(value_, clamp_bits(bits));
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::from_string(const std::string& decimal, unsigned bits)
{
    BigReal r(bits);
    if (mpfr_set_str(r.value_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("not a decimal number: " + decimal);
    return r;
}

BigReal BigReal::pi(unsigned bits)
{
    BigReal r(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

BigReal::BigReal(const BigReal& other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept
{
    // Leave `other` as a valid minimal-precision zero so its destructor is safe.
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

BigReal::~BigReal()
{
    mpfr_clear(value_);
}

Integer BigReal::round() const
{
    Integer out;
    mpfr_t tmp;
    mpfr_init2(tmp, mpfr_get_prec(value_));
    mpfr_round(tmp, value_);
    mpfr_get_z(out.get_mpz_t(), tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

std::string BigReal::to_string(int digits) const
{
    if (digits <= 0)
        digits = static_cast<int>(std::floor(static_cast<double>(bits()) * 0.30102999566398));
    if (mpfr_zero_p(value_))
        return "0";
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%.*Re", digits - 1, value_);
    std::string s(raw);
    mpfr_free_str(raw);
    return s;
}

BigReal& BigReal::operator+=(const BigReal& o)
{
    lower_precision(value_, mpfr_get_prec(o.value_));
    mpfr_add(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator-=(const BigReal& o)
{
    lower_precision(value_, mpfr_get_prec(o.value_));
    mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator*=(const BigReal& o)
{
    lower_precision(value_, mpfr_get_prec(o.value_));
    mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator/=(const BigReal& o)
{
    lower_precision(value_, mpfr_get_prec(o.value_));
    mpfr_div(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

BigReal BigReal::operator-() const
{
    BigReal r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b)
{
    if (mpfr_unordered_p(a.value_, b.value_))
        return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    if (c < 0)
        return std::partial_ordering::less;
    if (c > 0)
        return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

#define HEEGNER_UNARY(name, fn)                  \
    BigReal name(const BigReal& x)               \
    {                                            \
        BigReal r(x.bits());                     \
        fn(r.get(), x.get(), MPFR_RNDN);         \
        return r;                                \
    }

HEEGNER_UNARY(abs, mpfr_abs)
HEEGNER_UNARY(sqrt, mpfr_sqrt)
HEEGNER_UNARY(exp, mpfr_exp)
HEEGNER_UNARY(log, mpfr_log)
HEEGNER_UNARY(sin, mpfr_sin)
HEEGNER_UNARY(cos, mpfr_cos)

#undef HEEGNER_UNARY

BigReal atan2(const BigReal& y, const BigReal& x)
{
    BigReal r(std::min(x.bits(), y.bits()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

BigReal pow2(long e, unsigned bits)
{
    BigReal r(1, bits);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

BigReal pow10(long e, unsigned bits)
{
    BigReal r(bits);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
    if (e < 0) {
        BigReal one(1, bits);
        return one / r;
    }
    return r;
}

BigComplex& BigComplex::operator+=(const BigComplex& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o)
{
    BigReal re = re_ * o.re_ - im_ * o.im_;
    BigReal im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o)
{
    BigReal den = o.re_ * o.re_ + o.im_ * o.im_;
    BigReal re = (re_ * o.re_ + im_ * o.im_) / den;
    BigReal im = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& o)
{
    re_ *= o;
    im_ *= o;
    return *this;
}

BigComplex& BigComplex::operator*=(const Rational& o)
{
    BigReal f(o, bits());
    return *this *= f;
}

BigComplex conj(const BigComplex& z)
{
    return {z.real(), -z.imag()};
}

BigReal norm(const BigComplex& z)
{
    return z.real() * z.real() + z.imag() * z.imag();
}

BigReal abs(const BigComplex& z)
{
    BigReal r(z.bits());
    mpfr_hypot(r.get(), z.real().get(), z.imag().get(), MPFR_RNDN);
    return r;
}

BigReal arg(const BigComplex& z)
{
    return atan2(z.imag(), z.real());
}

BigComplex exp(const BigComplex& z)
{
    BigReal m = exp(z.real());
    return {m * cos(z.imag()), m * sin(z.imag())};
}

BigComplex log(const BigComplex& z)
{
    return {log(abs(z)), arg(z)};
}

BigComplex sqrt(const BigComplex& z)
{
    unsigned bits = z.bits();
    if (z.is_zero())
        return BigComplex(bits);
    BigReal r = abs(z);
    BigReal half(Rational(1, 2), bits);
    BigReal re = sqrt((r + z.real()) * half);
    BigReal im = sqrt((r - z.real()) * half);
    if (z.imag().sign() < 0)
        im = -im;
    return {std::move(re), std::move(im)};
}

BigComplex pow(const BigComplex& z, long n)
{
    if (n < 0)
        return BigComplex(1, z.bits()) / pow(z, -n);
    BigComplex result(1, z.bits());
    BigComplex base = z;
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

BigComplex unit_root(const Rational& x, unsigned bits)
{
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational frac = x - Rational(fl);
    BigReal angle = BigReal::pi(bits) * BigReal(Rational(frac * 2), bits);
    return {cos(angle), sin(angle)};
}

BigComplex parse_complex(const std::string& text, unsigned bits)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i')
        return {BigReal::from_string(s, bits), BigReal(bits)};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_imag = [&](std::string t) {
        if (t.empty() || t == "+")
            t = "1";
        else if (t == "-")
            t = "-1";
        return BigReal::from_string(t, bits);
    };
    if (split == std::string::npos)
        return {BigReal(bits), parse_imag(s)};
    return {BigReal::from_string(s.substr(0, split), bits), parse_imag(s.substr(split))};
}

} // namespace heegner
