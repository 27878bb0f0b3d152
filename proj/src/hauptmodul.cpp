#include "heegner/hauptmodul.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "heegner/errors.hpp"
#include "heegner/numeric.hpp"

namespace heegner {

namespace {

bool is_prime(long n)
{
    if (n < 2)
        return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0)
            return false;
    return true;
}

ExactSeries compute_qexp(long p, std::int64_t trunc)
{
    const std::int64_t e = 24 / (p - 1);
    ExactSeries up = eta_quotient(p, e, trunc);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e / 2));
    ExactSeries down = eta_quotient(p, -e, trunc) * Rational(scale);
    ExactSeries s = (up + down).plus_constant(Rational(e)).truncated(trunc);
    if (s.coeff(0) != 0 || s.coeff(-1) != 1)
        throw std::logic_error("Hauptmodul expansion is not q^-1 + 0 + O(q)");
    return s;
}

/// Longest expansion computed so far per prime; extending is the costly part.
ExactSeries cached_qexp(long p, std::int64_t trunc)
{
    static std::mutex mu;
    static std::map<long, ExactSeries> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end() && it->second.trunc() >= trunc)
            return it->second.truncated(trunc);
    }
    ExactSeries s = compute_qexp(p, trunc);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end())
        cache.emplace(p, s);
    else if (it->second.trunc() < trunc)
        it->second = s;
    return s;
}

struct SumResult {
    BigComplex value;
    bool converged = false;
};

SumResult sum_series(const ExactSeries& s, const BigComplex& tau, unsigned bits)
{
    const unsigned work = bits + 32;
    const BigComplex q = q_power(tau, 1, work);
    BigComplex qn = pow(q, s.valuation());
    BigComplex sum(work);
    const BigReal eps = pow2(-2 * static_cast<long>(bits + 20), work);
    const BigReal one(1, work);
    std::int64_t small_run = 0;
    for (std::int64_t n = s.valuation(); n < s.trunc(); ++n) {
        BigComplex term = qn;
        term *= s.at(n);
        sum += term;
        qn *= q;
        BigReal floor = norm(sum);
        if (floor < one)
            floor = one;
        if (norm(term) < eps * floor)
            ++small_run;
        else
            small_run = 0;
    }
    return {sum, small_run >= 8};
}

} // namespace

bool hauptmodul_formula_known(long p)
{
    return is_prime(p) && 24 % (p - 1) == 0;
}

HauptmodulSeries qexp(long p, std::int64_t trunc)
{
    if (!hauptmodul_formula_known(p))
        throw Error(ErrorKind::UnsupportedPrime,
                    "no eta-quotient formula for the Hauptmodul at p = " + std::to_string(p)
                        + "; supply an expansion through from_expansion");
    if (trunc < 1)
        throw std::invalid_argument("Hauptmodul truncation must be positive");
    return {p, cached_qexp(p, trunc)};
}

HauptmodulSeries from_expansion(long p, ExactSeries series)
{
    if (!is_prime(p))
        throw Error(ErrorKind::UnsupportedPrime, std::to_string(p) + " is not prime");
    if (series.scale() != 1 || series.valuation() != -1 || series.coeff(-1) != 1 || series.coeff(0) != 0)
        throw std::invalid_argument("Hauptmodul expansion must be q^-1 + 0 + O(q) in integral powers");
    for (Rational c : series.coeffs())
        if (!is_integer(c))
            throw std::invalid_argument("Hauptmodul expansion must have integer coefficients");
    return {p, std::move(series)};
}

ExactSeries FaberPoly::apply(const ExactSeries& t) const
{
    ExactSeries acc = exact_constant(coeffs.back(), t.trunc() + 1);
    for (std::size_t k = coeffs.size() - 1; k-- > 0;)
        acc = (acc * t).plus_constant(coeffs[k]);
    return acc;
}

BigComplex FaberPoly::operator()(const BigComplex& t) const
{
    BigComplex acc(coeffs.back(), t.bits());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc *= t;
        acc += BigComplex(coeffs[k], t.bits());
    }
    return acc;
}

FaberPoly faber_of(const ExactSeries& t, long m)
{
    if (m < 1)
        throw std::invalid_argument("Faber index must be positive");
    if (t.scale() != 1 || t.valuation() != -1 || t.coeff(-1) != 1)
        throw std::invalid_argument("Faber polynomials need a series q^-1 + O(1)");
    if (t.trunc() < m + 2)
        throw Error(ErrorKind::InsufficientTruncation,
                    "t_" + std::to_string(m) + " needs the series through q^" + std::to_string(m + 1));
    std::vector<ExactSeries> powers{exact_constant(Rational(1), t.trunc())};
    for (long k = 1; k <= m; ++k)
        powers.push_back(powers.back() * t);
    FaberPoly out{m, std::vector<Rational>(static_cast<std::size_t>(m + 1))};
    out.coeffs[static_cast<std::size_t>(m)] = 1;
    ExactSeries s = powers.back();
    for (long e = m - 1; e >= 0; --e) {
        Rational c = s.coeff(-e);
        if (c == 0)
            continue;
        out.coeffs[static_cast<std::size_t>(e)] -= c;
        s -= powers[static_cast<std::size_t>(e)] * c;
    }
    return out;
}

FaberPoly faber(const HauptmodulSeries& h, long m)
{
    return faber_of(h.series, m);
}

ExactSeries classical_j(std::int64_t trunc)
{
    ExactSeries e4 = eisenstein(4, trunc + 1);
    return (e4 * e4 * e4 / delta(trunc + 2)).truncated(trunc);
}

FaberPoly classical_faber(long m)
{
    return faber_of(classical_j(m + 3).plus_constant(Rational(-744)), m);
}

BigComplex reduce_point(const BigComplex& alpha, long p)
{
    if (alpha.imag().sign() <= 0)
        throw Error(ErrorKind::NotUpperHalfPlane, "point must lie in the upper half plane");
    const unsigned bits = alpha.bits();
    const BigReal gain = BigReal(1, bits) + pow10(-30, bits);
    const BigComplex one(1, bits);
    const BigComplex pp(p, bits);
    BigComplex z = alpha;
    for (int iter = 0; iter < 100000; ++iter) {
        z.real() -= BigReal(z.real().round(), bits);
        BigComplex best = -(one / (pp * z));
        for (BigComplex g : {z / (pp * z + one), z / (one - pp * z)})
            if (g.imag() > best.imag())
                best = std::move(g);
        if (!(best.imag() > z.imag() * gain))
            return z;
        z = std::move(best);
    }
    throw Error(ErrorKind::ConvergenceFailure, "point reduction did not terminate");
}

BigComplex heegner_point(const ClassRep& rep, unsigned bits)
{
    BigReal den(rep.heegner_den, bits);
    return {BigReal(rep.heegner_re, bits) / den, sqrt(BigReal(rep.heegner_d, bits)) / den};
}

BigComplex evaluate_hauptmodul(const HauptmodulSeries& h, const BigComplex& tau, unsigned bits)
{
    if (tau.imag().sign() <= 0)
        throw Error(ErrorKind::NotUpperHalfPlane, "point must lie in the upper half plane");
    ExactSeries s = h.series;
    for (;;) {
        SumResult r = sum_series(s, tau, bits);
        if (r.converged)
            return r.value;
        std::int64_t have = s.trunc();
        if (have >= max_cm_terms)
            throw Error(ErrorKind::ConvergenceFailure,
                        "j_" + std::to_string(h.p) + "^* needs more than " + std::to_string(max_cm_terms) + " terms here");
        if (!hauptmodul_formula_known(h.p))
            throw Error(ErrorKind::ConvergenceFailure, "supplied expansion is too short at this point");
        s = cached_qexp(h.p, std::min<std::int64_t>(std::max<std::int64_t>(2 * have, 64), max_cm_terms));
    }
}

BigComplex evaluate_cm(const HauptmodulSeries& h, const ClassRep& rep, unsigned bits)
{
    return evaluate_hauptmodul(h, reduce_point(heegner_point(rep, bits + 32), h.p), bits);
}

BigReal fricke_residual(const HauptmodulSeries& h, const BigComplex& tau, unsigned bits)
{
    const unsigned work = bits + 32;
    BigComplex image = -(BigComplex(1, work) / (BigComplex(h.p, work) * tau));
    return relative_residual(evaluate_hauptmodul(h, tau, bits), evaluate_hauptmodul(h, image, bits));
}

} // namespace heegner
