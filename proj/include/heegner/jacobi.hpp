#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "heegner/halfint.hpp"
#include "heegner/series.hpp"

namespace heegner {

/// Finite Laurent polynomial sum c_r zeta^r with exact coefficients.
class ZetaPoly {
public:
    ZetaPoly() = default;
    explicit ZetaPoly(Rational constant);
    static ZetaPoly monomial(Rational c, std::int64_t r);

    /// Coefficient of zeta^r (zero outside the stored range).
    Rational at(std::int64_t r) const;
    bool is_zero() const { return c_.empty(); }
    /// Smallest and largest exponent with a nonzero coefficient; undefined for zero.
    std::int64_t low() const { return lo_; }
    std::int64_t high() const { return lo_ + static_cast<std::int64_t>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    ZetaPoly& operator+=(const ZetaPoly& o);
    ZetaPoly& operator-=(const ZetaPoly& o);
    ZetaPoly& operator*=(const ZetaPoly& o);
    ZetaPoly& operator*=(const Rational& r);
    ZetaPoly operator-() const;

    friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly& b) { return a += b; }
    friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly& b) { return a -= b; }
    friend ZetaPoly operator*(ZetaPoly a, const ZetaPoly& b) { return a *= b; }
    friend ZetaPoly operator*(ZetaPoly a, const Rational& r) { return a *= r; }
    friend bool operator==(const ZetaPoly& a, const ZetaPoly& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }

private:
    void normalize();

    std::int64_t lo_ = 0;
    std::vector<Rational> c_;
};

template <>
struct coeff_traits<ZetaPoly> {
    static ZetaPoly zero_like(const ZetaPoly&) { return ZetaPoly(); }
    static ZetaPoly from_rational(const Rational& r, const ZetaPoly&) { return ZetaPoly(r); }
    static bool is_zero(const ZetaPoly& c) { return c.is_zero(); }
    static bool is_one(const ZetaPoly& c) { return c == ZetaPoly(Rational(1)); }
    /// Only monomials c zeta^r are units.
    static ZetaPoly inverse(const ZetaPoly& c);
};

/// sum c(n, r) q^n zeta^r; rows n below q.trunc() are exact, every row is a full polynomial in zeta.
struct JacobiSeries {
    long index = 1;
    int weight = 0;
    Series<ZetaPoly> q{1, 1, ZetaPoly()};

    Rational c(std::int64_t n, std::int64_t r) const;
    std::int64_t trunc() const { return q.trunc(); }
    std::int64_t first_row() const { return q.valuation(); }
    JacobiSeries truncated(std::int64_t rows) const;
};

JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b);
JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b);
JacobiSeries operator*(const JacobiSeries& a, const Rational& r);
bool operator==(const JacobiSeries& a, const JacobiSeries& b);

struct WeakGenerators {
    JacobiSeries a; ///< weight -2, index 1
    JacobiSeries b; ///< weight 0, index 1
};

/// a = (zeta - 2 + zeta^-1) prod (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 / (1 - q^n)^4 and
/// b = 12 (wp / (2 pi i)^2) a, rows n < trunc.
WeakGenerators weak_generators(std::int64_t trunc);

/// phi_{D,p} in J^!_{2,p}: c(n, r) = B(D, 4pn - r^2), B(D, -D) = 1, B(D, d) = 0 for other d < 0.
struct PhiForm {
    long D = 0;
    long p = 0;
    JacobiSeries base;
};

inline constexpr std::int64_t default_phi_rows = 12;

/// p in {1, 2, 3}; rows n < trunc.
PhiForm phi(long D, long p, std::int64_t trunc = default_phi_rows);

/// Common value of c(n, r) over the stored cells with 4pn - r^2 = d.
Rational coefficient_B(const PhiForm& f, long d);
Rational B_star(const PhiForm& f, long d);
/// Same lookup on any index-p series.
Rational discriminant_coefficient(const JacobiSeries& f, long d);

/// c(n, r) = c(np, r) + [p | n, p | r] p c(n/p, r/p) for a weight 2, index 1 input.
JacobiSeries hecke_V(const JacobiSeries& f, long p);

/// sum over nu | l of (D / (l/nu)) nu phi_{nu^2 D, p}; l prime to p.
JacobiSeries hecke_T(const PhiForm& f, long l);

/// Constant term of sum_n A(n) q^n * sum_n B(-n) q^-n, i.e. sum_n A(n) B(-n).
Rational pairing(const HalfIntForm& f, const PhiForm& g);

nlohmann::json to_json(const JacobiSeries& f);
JacobiSeries jacobi_from_json(const nlohmann::json& j);

} // namespace heegner
