#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "heegner/bignum.hpp"
#include "heegner/errors.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// Per-coefficient-domain hooks used by Series. `proto` carries shape data
/// (precision for BigComplex) that a fresh zero must inherit.
template <class C>
struct coeff_traits;

template <>
struct coeff_traits<Rational> {
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational from_rational(const Rational& r, const Rational&) { return r; }
    static bool is_zero(const Rational& c) { return sgn(c) == 0; }
    static bool is_one(const Rational& c) { return c == 1; }
    static Rational inverse(const Rational& c) { return Rational(1) / c; }
};

template <>
struct coeff_traits<BigComplex> {
    static BigComplex zero_like(const BigComplex& proto) { return BigComplex(proto.bits()); }
    static BigComplex from_rational(const Rational& r, const BigComplex& proto) { return BigComplex(r, proto.bits()); }
    static bool is_zero(const BigComplex& c) { return c.is_zero(); }
    static bool is_one(const BigComplex& c) { return c.imag().is_zero() && c.real() == BigReal(1, c.bits()); }
    static BigComplex inverse(const BigComplex& c) { return BigComplex(1, c.bits()) / c; }
};

/// Truncated Laurent series in q^{1/scale}. Coefficients are stored densely for
/// exponent indices [first, trunc); index k stands for the exponent k/scale.
/// Indices at or beyond trunc are unknown. The stored block never begins with
/// a zero; the zero series keeps first == trunc and an empty block.
template <class C>
class Series {
public:
    using coeff_type = C;
    using traits = coeff_traits<C>;

    Series(std::int64_t scale, std::int64_t trunc, C zero)
        : scale_(scale), first_(trunc), trunc_(trunc), zero_(traits::zero_like(zero))
    {
        check_scale();
    }

    Series(std::int64_t scale, std::int64_t first, std::vector<C> coeffs, std::int64_t trunc, C zero)
        : scale_(scale), first_(first), trunc_(trunc), coeffs_(std::move(coeffs)), zero_(traits::zero_like(zero))
    {
        check_scale();
        if (static_cast<std::int64_t>(coeffs_.size()) > trunc_ - first_)
            coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(trunc_ - first_, 0)), zero_);
        if (first_ > trunc_)
            first_ = trunc_;
        coeffs_.resize(static_cast<std::size_t>(trunc_ - first_), zero_);
        normalize();
    }

    static Series monomial(C c, std::int64_t index, std::int64_t scale, std::int64_t trunc)
    {
        C zero = traits::zero_like(c);
        std::vector<C> v;
        if (index < trunc)
            v.push_back(std::move(c));
        return Series(scale, index, std::move(v), trunc, std::move(zero));
    }

    std::int64_t scale() const noexcept { return scale_; }
    /// Index of the first nonzero coefficient; equals trunc() for the zero series.
    std::int64_t valuation() const noexcept { return first_; }
    std::int64_t trunc() const noexcept { return trunc_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const C& zero() const noexcept { return zero_; }
    const std::vector<C>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient at exponent index/scale.
    const C& at(std::int64_t index) const
    {
        if (index >= trunc_)
            throw Error(ErrorKind::BeyondTruncation,
                        "index " + std::to_string(index) + " at or beyond truncation " + std::to_string(trunc_));
        if (index < first_)
            return zero_;
        return coeffs_[static_cast<std::size_t>(index - first_)];
    }

    /// Coefficient of q^e for a rational exponent e.
    C coeff(const Rational& e) const
    {
        Rational idx = e * scale_;
        if (!is_integer(idx)) {
            if (idx >= trunc_)
                throw Error(ErrorKind::BeyondTruncation, "exponent " + e.get_str() + " beyond truncation");
            return zero_;
        }
        return at(idx.get_num().get_si());
    }

    C coeff(std::int64_t n) const { return coeff(Rational(n)); }

    /// True when exponent e lies below the truncation.
    bool known(const Rational& e) const { return e * scale_ < trunc_; }

    Series rescaled(std::int64_t new_scale) const
    {
        if (new_scale == scale_)
            return *this;
        if (new_scale % scale_ != 0)
            throw std::invalid_argument("rescale target must be a multiple of the scale");
        std::int64_t f = new_scale / scale_;
        std::vector<C> v;
        if (!coeffs_.empty()) {
            v.assign(static_cast<std::size_t>((trunc_ - first_) * f), zero_);
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                v[k * static_cast<std::size_t>(f)] = coeffs_[k];
        }
        return Series(new_scale, first_ * f, std::move(v), trunc_ * f, zero_);
    }

    /// Lower the truncation to t (no-op if already lower).
    Series truncated(std::int64_t t) const
    {
        if (t >= trunc_)
            return *this;
        std::vector<C> v(coeffs_.begin(), coeffs_.begin() + std::max<std::int64_t>(0, std::min<std::int64_t>(t - first_, size())));
        return Series(scale_, std::min(first_, t), std::move(v), t, zero_);
    }

    /// Multiply by q^{shift/scale}.
    Series shifted(std::int64_t shift) const
    {
        Series r = *this;
        r.first_ += shift;
        r.trunc_ += shift;
        return r;
    }

    Series operator-() const
    {
        Series r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    Series& operator+=(const Series& o) { return *this = combine(*this, o, false); }
    Series& operator-=(const Series& o) { return *this = combine(*this, o, true); }
    Series& operator*=(const Series& o) { return *this = multiply(*this, o); }
    Series& operator/=(const Series& o) { return *this = multiply(*this, o.inverse()); }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
    friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }
    friend Series operator/(const Series& a, const Series& b) { return multiply(a, b.inverse()); }

    friend Series operator*(Series a, const C& c)
    {
        if (traits::is_zero(c))
            return Series(a.scale_, a.trunc_, a.zero_);
        for (auto& x : a.coeffs_)
            x = x * c;
        a.normalize();
        return a;
    }

    Series times(const Rational& r) const
    {
        if (sgn(r) == 0)
            return Series(scale_, trunc_, zero_);
        Series a = *this;
        for (auto& x : a.coeffs_)
            x = x * r;
        a.normalize();
        return a;
    }

    /// Add the constant c·q^0 (requires 0 < trunc).
    Series plus_constant(const C& c) const
    {
        return *this + monomial(c, 0, scale_, trunc_);
    }

    Series inverse() const
    {
        if (is_zero())
            throw Error(ErrorKind::DivisionByZeroSeries, "series vanishes up to its truncation");
        const std::int64_t v = first_;
        const std::int64_t n = trunc_ - v;
        C lead_inv = traits::inverse(coeffs_[0]);
        std::vector<C> g(static_cast<std::size_t>(n), zero_);
        g[0] = lead_inv;
        for (std::int64_t k = 1; k < n; ++k) {
            C acc = zero_;
            for (std::int64_t j = 1; j <= k; ++j) {
                const C& b = coeffs_[static_cast<std::size_t>(j)];
                if (traits::is_zero(b))
                    continue;
                acc += b * g[static_cast<std::size_t>(k - j)];
            }
            g[static_cast<std::size_t>(k)] = -(acc * lead_inv);
        }
        return Series(scale_, -v, std::move(g), n - v, zero_);
    }

    /// f(q) -> f(q^m): exponent index k maps to m·k, scale kept.
    Series dilate(std::int64_t m) const
    {
        if (m < 1)
            throw std::invalid_argument("dilation factor must be positive");
        if (m == 1)
            return *this;
        std::vector<C> v;
        if (!coeffs_.empty()) {
            v.assign(static_cast<std::size_t>((trunc_ - first_) * m), zero_);
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                v[k * static_cast<std::size_t>(m)] = coeffs_[k];
        }
        return Series(scale_, first_ * m, std::move(v), trunc_ * m, zero_);
    }

    /// Σ c(k) q^{k/s} -> Σ c(mk) q^{k/s}.
    Series hecke_U(std::int64_t m) const
    {
        if (m < 1)
            throw std::invalid_argument("U_m needs m >= 1");
        if (m == 1)
            return *this;
        std::int64_t lo = -floor_div(-first_, m);
        std::int64_t hi = -floor_div(-trunc_, m);
        std::vector<C> v;
        for (std::int64_t k = lo; k < hi; ++k)
            v.push_back(at(k * m));
        return Series(scale_, std::min(lo, hi), std::move(v), hi, zero_);
    }

    /// (q d/dq)^n, each coefficient times (k/s)^n.
    Series d_operator(int n = 1) const
    {
        if (n < 0)
            throw std::invalid_argument("derivative order must be nonnegative");
        Series r = *this;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
            Rational e(first_ + static_cast<std::int64_t>(i), scale_);
            e.canonicalize();
            Rational f(1);
            for (int t = 0; t < n; ++t)
                f *= e;
            r.coeffs_[i] = r.coeffs_[i] * f;
        }
        r.normalize();
        return r;
    }

    /// Formal logarithm; needs valuation 0 and constant term 1.
    Series log() const
    {
        if (is_zero() || first_ != 0 || !traits::is_one(coeffs_[0]))
            throw Error(ErrorKind::NonUnitLeadingTerm, "log needs a series of the form 1 + O(q)");
        const std::int64_t n = trunc_;
        std::vector<C> g(static_cast<std::size_t>(n), zero_);
        for (std::int64_t k = 1; k < n; ++k) {
            C acc = coeffs_[static_cast<std::size_t>(k)] * Rational(k);
            for (std::int64_t j = 1; j < k; ++j) {
                const C& fk = coeffs_[static_cast<std::size_t>(k - j)];
                if (traits::is_zero(fk) || traits::is_zero(g[static_cast<std::size_t>(j)]))
                    continue;
                acc -= g[static_cast<std::size_t>(j)] * fk * Rational(j);
            }
            g[static_cast<std::size_t>(k)] = acc * Rational(1, k);
        }
        return Series(scale_, 0, std::move(g), n, zero_);
    }

    /// Formal exponential; needs positive valuation.
    Series exp() const
    {
        if (first_ <= 0 && !is_zero())
            throw Error(ErrorKind::NonUnitLeadingTerm, "exp needs positive valuation");
        const std::int64_t n = trunc_;
        std::vector<C> f(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)), zero_);
        f[0] = traits::from_rational(Rational(1), zero_);
        for (std::int64_t k = 1; k < n; ++k) {
            C acc = zero_;
            for (std::int64_t j = std::max<std::int64_t>(first_, 1); j <= k; ++j) {
                const C& gj = at(j);
                if (traits::is_zero(gj))
                    continue;
                acc += gj * f[static_cast<std::size_t>(k - j)] * Rational(j);
            }
            f[static_cast<std::size_t>(k)] = acc * Rational(1, k);
        }
        return Series(scale_, 0, std::move(f), std::max<std::int64_t>(n, 1), zero_);
    }

    /// f^alpha. The monomial part q^{alpha·v} must land on an integer index and,
    /// unless alpha is an integer, the leading coefficient must be 1.
    Series pow(const Rational& alpha) const
    {
        if (is_zero())
            throw Error(ErrorKind::NonUnitLeadingTerm, "power of a series that vanishes up to truncation");
        Rational shift = alpha * first_;
        if (!is_integer(shift))
            throw Error(ErrorKind::FractionalMonomialPower,
                        "monomial exponent " + shift.get_str() + "/" + std::to_string(scale_) + " is not representable");
        C lead = coeffs_[0];
        C lead_pow = traits::from_rational(Rational(1), zero_);
        if (!traits::is_one(lead)) {
            if (!is_integer(alpha))
                throw Error(ErrorKind::NonUnitLeadingTerm, "non-integral power of a series with leading coefficient != 1");
            long e = alpha.get_num().get_si();
            C base = e >= 0 ? lead : traits::inverse(lead);
            for (long i = 0; i < (e >= 0 ? e : -e); ++i)
                lead_pow = lead_pow * base;
        }
        C inv_lead = traits::inverse(lead);
        const std::int64_t n = trunc_ - first_;
        std::vector<C> h(static_cast<std::size_t>(n), zero_);
        for (std::int64_t j = 0; j < n; ++j)
            h[static_cast<std::size_t>(j)] = coeffs_[static_cast<std::size_t>(j)] * inv_lead;
        std::vector<C> P(static_cast<std::size_t>(n), zero_);
        P[0] = traits::from_rational(Rational(1), zero_);
        for (std::int64_t k = 1; k < n; ++k) {
            C acc = zero_;
            for (std::int64_t j = 1; j <= k; ++j) {
                const C& hj = h[static_cast<std::size_t>(j)];
                if (traits::is_zero(hj))
                    continue;
                Rational w = (alpha + 1) * j - k;
                if (sgn(w) == 0)
                    continue;
                acc += hj * P[static_cast<std::size_t>(k - j)] * w;
            }
            P[static_cast<std::size_t>(k)] = acc * Rational(1, k);
        }
        for (auto& c : P)
            c = c * lead_pow;
        std::int64_t v = shift.get_num().get_si();
        return Series(scale_, v, std::move(P), v + n, zero_);
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        return a.scale_ == b.scale_ && a.first_ == b.first_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::int64_t size() const noexcept { return static_cast<std::int64_t>(coeffs_.size()); }

    void check_scale() const
    {
        if (scale_ < 1)
            throw std::invalid_argument("series scale must be positive");
    }

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && traits::is_zero(coeffs_[lead]))
            ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            first_ = trunc_;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            first_ += static_cast<std::int64_t>(lead);
        }
    }

    static std::pair<Series, Series> common_scale(const Series& a, const Series& b)
    {
        std::int64_t s = std::lcm(a.scale_, b.scale_);
        return {a.rescaled(s), b.rescaled(s)};
    }

    static Series combine(const Series& a0, const Series& b0, bool subtract)
    {
        auto [a, b] = common_scale(a0, b0);
        std::int64_t t = std::min(a.trunc_, b.trunc_);
        for (const Series* x : {&a, &b})
            if (!x->is_zero() && x->first_ >= t)
                throw Error(ErrorKind::EmptyTruncation, "an operand lies entirely beyond the common truncation");
        std::int64_t lo = std::min(a.first_, b.first_);
        std::vector<C> v(static_cast<std::size_t>(std::max<std::int64_t>(t - lo, 0)), a.zero_);
        for (std::int64_t k = a.first_; k < t; ++k)
            v[static_cast<std::size_t>(k - lo)] = a.coeffs_[static_cast<std::size_t>(k - a.first_)];
        for (std::int64_t k = b.first_; k < t; ++k) {
            const C& c = b.coeffs_[static_cast<std::size_t>(k - b.first_)];
            if (traits::is_zero(c))
                continue;
            auto& slot = v[static_cast<std::size_t>(k - lo)];
            if (subtract)
                slot -= c;
            else
                slot += c;
        }
        return Series(a.scale_, std::min(lo, t), std::move(v), t, a.zero_);
    }

    static Series multiply(const Series& a0, const Series& b0)
    {
        auto [a, b] = common_scale(a0, b0);
        std::int64_t t = std::min(a.trunc_ + b.first_, b.trunc_ + a.first_);
        if (a.is_zero() || b.is_zero())
            return Series(a.scale_, t, a.zero_);
        std::int64_t v = a.first_ + b.first_;
        std::int64_t n = t - v;
        std::vector<C> out(static_cast<std::size_t>(n), a.zero_);
        std::int64_t na = std::min<std::int64_t>(a.size(), n);
        for (std::int64_t i = 0; i < na; ++i) {
            const C& x = a.coeffs_[static_cast<std::size_t>(i)];
            if (traits::is_zero(x))
                continue;
            std::int64_t nb = std::min<std::int64_t>(b.size(), n - i);
            for (std::int64_t j = 0; j < nb; ++j) {
                const C& y = b.coeffs_[static_cast<std::size_t>(j)];
                if (traits::is_zero(y))
                    continue;
                out[static_cast<std::size_t>(i + j)] += x * y;
            }
        }
        return Series(a.scale_, v, std::move(out), t, a.zero_);
    }

    std::int64_t scale_;
    std::int64_t first_;
    std::int64_t trunc_;
    std::vector<C> coeffs_;
    C zero_;
};

/// Reinterpret a rational series over another coefficient domain.
template <class C>
Series<C> lift(const Series<Rational>& f, const C& zero)
{
    std::vector<C> v;
    v.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs())
        v.push_back(coeff_traits<C>::from_rational(c, zero));
    return Series<C>(f.scale(), f.valuation(), std::move(v), f.trunc(), zero);
}

} // namespace heegner
