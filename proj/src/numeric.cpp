#include "heegner/numeric.hpp"

#include <algorithm>

namespace heegner {

BigComplex q_power(const BigComplex& tau, std::int64_t scale, unsigned bits)
{
    BigReal two_pi = BigReal::pi(bits) * BigReal(2, bits);
    BigComplex i_tau(-tau.imag(), tau.real()); // i * tau
    return exp(i_tau * (two_pi / BigReal(static_cast<long>(scale), bits)));
}

BigComplex evaluate(const ExactSeries& f, const BigComplex& tau, unsigned bits)
{
    if (tau.imag().sign() <= 0)
        throw Error(ErrorKind::NotUpperHalfPlane, "evaluation point must have positive imaginary part");
    const unsigned work = bits + 32;
    BigComplex x = q_power(tau, f.scale(), work);
    BigComplex sum(work);
    if (f.is_zero())
        return sum;
    BigComplex xp = pow(x, static_cast<long>(f.valuation()));
    // Magnitudes of the terms in the final stretch, to judge the tail.
    const std::size_t window = static_cast<std::size_t>(std::max<std::int64_t>(8 * f.scale(), 32));
    const auto& c = f.coeffs();
    BigReal tail_max(work);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (sgn(c[k]) != 0) {
            BigComplex term = xp * BigReal(c[k], work);
            sum += term;
            if (k + window >= c.size()) {
                BigReal m = abs(term);
                if (m > tail_max)
                    tail_max = m;
            }
        }
        xp *= x;
    }
    BigReal scale_ref = std::max(abs(sum), BigReal(1, work));
    if (c.size() < window || tail_max > scale_ref * pow2(-static_cast<long>(bits) - 10, work))
        throw Error(ErrorKind::ConvergenceFailure,
                    "series truncated at index " + std::to_string(f.trunc()) + " has not converged");
    return sum;
}

BigReal relative_residual(const BigComplex& a, const BigComplex& b)
{
    BigReal d = abs(a - b);
    BigReal ref = std::max({abs(a), abs(b), BigReal(1, a.bits())});
    return d / ref;
}

} // namespace heegner
