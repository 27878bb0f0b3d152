#include "heegner/halfint.hpp"

#include <algorithm>
#include <stdexcept>

#include "heegner/arith.hpp"
#include "heegner/linsolve.hpp"
#include "heegner/numeric.hpp"

namespace heegner {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return -floor_div(-a, b);
}

struct BracketSpec {
    int k;
    int n;
    long theta_shift;
    long divisor;
};

std::vector<BracketSpec> fixed_brackets(long p)
{
    switch (p) {
    case 2:
        // The weight-10 bracket appears in the literature as
        // ([theta,E10(8 tau)]_1/Delta(8 tau) + 2112 theta)/(-40); that expression
        // has leading coefficient 1/2. Halving both constants gives q^{-7} + ...
        return {{10, 1, 1056, -20}, {8, 2, -11520, 72}};
    case 3:
        return {{10, 1, 1584, -20}, {8, 2, -25920, 72}, {6, 3, 272160, -112}};
    default:
        throw Error(ErrorKind::UnsupportedPrime,
                    "explicit generators are available for p = 2, 3 only; use the general basis mode");
    }
}

/// Delta(4p tau)^m known for exponents below `trunc`.
ExactSeries dilated_delta_power(long p, long m, std::int64_t trunc)
{
    const std::int64_t N = 4 * p;
    ExactSeries d = delta(ceil_div(trunc, N) + m + 3).dilate(N);
    return m == 1 ? d : d.pow(Rational(m));
}

/// [theta, g(4p tau)]_n / Delta(4p tau)^m for exponents below `trunc`.
ExactSeries bracket_quotient(const ExactSeries& g, int weight, int n, long p, long m, std::int64_t trunc)
{
    const std::int64_t N = 4 * p;
    const std::int64_t tin = trunc + N * m;
    ExactSeries th = theta(tin);
    ExactSeries gd = g.dilate(N).truncated(tin);
    ExactSeries rc = rankin_cohen(th, Rational(1, 2), gd, weight, n);
    return (rc / dilated_delta_power(p, m, tin + N * m)).truncated(trunc);
}

bool plus_exponent(long p, std::int64_t n)
{
    return is_square_mod(n, 4 * p);
}

void check_plus_support(const ExactSeries& f, long p)
{
    for (std::int64_t n = f.valuation(); n < f.trunc(); ++n)
        if (sgn(f.at(n)) != 0 && !plus_exponent(p, n))
            throw std::logic_error("plus-space support violated at q^" + std::to_string(n));
}

std::vector<ExactSeries> fixed_family(long p, long d_max, std::int64_t T)
{
    const std::int64_t N = 4 * p;
    const long M = static_cast<long>(ceil_div(d_max, N));
    const std::int64_t tseed = T + N * (M + 1);
    std::vector<ExactSeries> seeds{theta(tseed)};
    for (auto& g : build_generators(p, tseed))
        seeds.push_back(std::move(g));

    const std::int64_t jt = ceil_div(T, N) + M + 3;
    ExactSeries e4 = eisenstein(4, jt + 2);
    ExactSeries j = (e4 * e4 * e4 / delta(jt + 3)).truncated(jt).dilate(N);

    std::vector<ExactSeries> family;
    ExactSeries jm = exact_constant(1, j.trunc());
    for (long m = 0; m <= M; ++m) {
        for (const auto& s : seeds)
            family.push_back(s * jm);
        jm = jm * j;
    }
    return family;
}

std::vector<ExactSeries> general_family(long p, long d_max, std::int64_t T)
{
    const std::int64_t N = 4 * p;
    const long M = static_cast<long>(ceil_div(d_max, N)) + 1;
    const std::int64_t tin = T + N * (M + 1);
    const std::int64_t et = ceil_div(tin, N) + 2;
    ExactSeries e4 = eisenstein(4, et);
    ExactSeries e6 = eisenstein(6, et);

    std::vector<ExactSeries> family{theta(T)};
    for (long m = 1; m <= M; ++m) {
        for (int n = 0; n <= 3; ++n) {
            int w = static_cast<int>(12 * m - 2 * n);
            for (int b = 0; 6 * b <= w; ++b) {
                if ((w - 6 * b) % 4 != 0)
                    continue;
                int a = (w - 6 * b) / 4;
                ExactSeries g = exact_constant(1, et);
                for (int i = 0; i < a; ++i)
                    g = g * e4;
                for (int i = 0; i < b; ++i)
                    g = g * e6;
                family.push_back(bracket_quotient(g, w, n, p, m, T));
            }
        }
    }
    return family;
}

} // namespace

bool admissible(long p, long d)
{
    return d > 0 && is_square_mod(-d, 4 * p);
}

std::vector<long> admissible_list(long p, long d_max)
{
    std::vector<long> out;
    for (long d = 1; d <= d_max; ++d)
        if (admissible(p, d))
            out.push_back(d);
    return out;
}

std::vector<ExactSeries> build_generators(long p, std::int64_t trunc)
{
    const auto specs = fixed_brackets(p);
    const std::int64_t N = 4 * p;
    std::vector<ExactSeries> out;
    for (const auto& s : specs) {
        ExactSeries e = eisenstein(s.k, ceil_div(trunc + N, N) + 1);
        ExactSeries q = bracket_quotient(e, s.k, s.n, p, 1, trunc);
        out.push_back((q + theta(trunc).times(s.theta_shift)).times(frac(1, s.divisor)));
    }
    return out;
}

std::vector<HalfIntForm> basis(long p, long d_max, std::int64_t qtrunc, BasisMode mode)
{
    if (p < 2 || (mode == BasisMode::Fixed && p != 2 && p != 3))
        throw Error(ErrorKind::UnsupportedPrime, "fixed generator basis needs p in {2, 3}, got " + std::to_string(p));
    const std::int64_t T = qtrunc + 1;
    const auto targets = admissible_list(p, d_max);
    if (targets.empty())
        return {};

    std::vector<ExactSeries> family = mode == BasisMode::Fixed ? fixed_family(p, d_max, T) : general_family(p, d_max, T);
    std::int64_t lowest = 0;
    for (const auto& g : family)
        lowest = std::min(lowest, g.valuation());

    // Columns of the principal part and constant term, plus (general mode)
    // the non-plus exponents of the known window.
    std::vector<std::int64_t> exps;
    for (std::int64_t e = lowest; e <= 0; ++e)
        exps.push_back(e);
    if (mode == BasisMode::General)
        for (std::int64_t e = 1; e < T; ++e)
            if (!plus_exponent(p, e))
                exps.push_back(e);

    std::vector<std::vector<Rational>> rows;
    for (std::int64_t e : exps) {
        std::vector<Rational> row;
        for (const auto& g : family)
            row.push_back(g.at(e));
        rows.push_back(std::move(row));
    }
    std::vector<std::vector<Rational>> rhs;
    for (long d : targets) {
        std::vector<Rational> b(exps.size());
        for (std::size_t i = 0; i < exps.size(); ++i)
            b[i] = exps[i] == -d ? 1 : 0;
        rhs.push_back(std::move(b));
    }
    std::vector<std::vector<Rational>> sol;
    try {
        sol = solve_exact_many(rows, rhs, family.size());
    } catch (const Error&) {
        throw Error(ErrorKind::SingularSystem,
                    "generator family cannot realize every admissible d <= " + std::to_string(d_max) + " for p = " +
                        std::to_string(p));
    }

    std::vector<HalfIntForm> out;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        ExactSeries f = exact_zero(1, T);
        for (std::size_t i = 0; i < family.size(); ++i)
            if (sgn(sol[k][i]) != 0)
                f += family[i].times(sol[k][i]);
        if (f.trunc() < T)
            throw Error(ErrorKind::InsufficientTruncation, "basis element came out shorter than requested");
        f = f.truncated(T);
        const long d = targets[k];
        if (f.valuation() != -d || f.at(-d) != 1)
            throw std::logic_error("basis element has the wrong principal part");
        for (std::int64_t e = -d + 1; e <= 0; ++e)
            if (sgn(f.at(e)) != 0)
                throw std::logic_error("basis element is not in echelon form");
        check_plus_support(f, p);
        out.push_back({p, d, std::move(f), "f_{" + std::to_string(d) + "," + std::to_string(p) + "}"});
    }
    return out;
}

HalfIntForm basis_form(long p, long d, std::int64_t qtrunc, BasisMode mode)
{
    if (!admissible(p, d))
        throw Error(ErrorKind::NotAdmissible, "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    for (auto& f : basis(p, d, qtrunc, mode))
        if (f.d == d)
            return std::move(f);
    throw std::logic_error("basis did not produce the requested element");
}

Rational coefficient_A(const HalfIntForm& f, long D)
{
    return f.series.coeff(D);
}

Rational A_star(const HalfIntForm& f, long D)
{
    return coefficient_A(f, D) * two_pow_s(D, f.p);
}

VectorComponents vector_components(const HalfIntForm& f)
{
    const long p = f.p;
    const std::int64_t N = 4 * p;
    VectorComponents out{p, {}};
    const ExactSeries& s = f.series;
    for (long beta = 0; beta < 2 * p; ++beta) {
        Rational w = beta % p == 0 ? Rational(1) : Rational(1, 2);
        std::int64_t target = (beta * beta) % N;
        std::int64_t first = s.valuation();
        std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(s.trunc() - first, 0)));
        for (std::int64_t n = first; n < s.trunc(); ++n)
            if (pos_mod(n, N) == target)
                c[static_cast<std::size_t>(n - first)] = s.at(n) * w;
        out.h.emplace_back(N, first, std::move(c), s.trunc(), Rational(0));
    }
    return out;
}

ExactSeries reassemble(const VectorComponents& v)
{
    ExactSeries acc = exact_zero(1, v.h.empty() ? 1 : v.h.front().trunc());
    for (const auto& h : v.h)
        acc += ExactSeries(1, h.valuation(), h.coeffs(), h.trunc(), Rational(0));
    return acc;
}

TransformationReport check_transformations(const HalfIntForm& f, const BigComplex& tau0, unsigned bits)
{
    if (tau0.imag().sign() <= 0)
        throw Error(ErrorKind::NotUpperHalfPlane, "tau0 must lie in the upper half plane");
    const unsigned work = bits + 32;
    const long p = f.p;
    const std::int64_t N = 4 * p;
    const VectorComponents v = vector_components(f);
    const BigComplex tau = tau0;
    const BigComplex inv = -(BigComplex(1, work) / tau);
    const BigComplex tau_plus = tau + BigComplex(1, work);

    std::vector<BigComplex> h_tau, h_inv, h_plus;
    for (const auto& h : v.h) {
        h_tau.push_back(evaluate(h, tau, work));
        h_inv.push_back(evaluate(h, inv, work));
        h_plus.push_back(evaluate(h, tau_plus, work));
    }
    const BigComplex sqrt_tau = sqrt(tau);

    TransformationReport report;
    report.p = p;
    report.d = f.d;
    report.terms = f.series.trunc();
    report.max_residual = BigReal(work);
    auto record = [&](std::string name, const BigComplex& lhs, const BigComplex& rhs) {
        BigReal r = relative_residual(lhs, rhs);
        if (r > report.max_residual)
            report.max_residual = r;
        report.checks.push_back({std::move(name), std::move(r)});
    };

    for (long beta = 0; beta < 2 * p; ++beta) {
        BigComplex rhs = unit_root(frac(beta * beta, N), work) * h_tau[static_cast<std::size_t>(beta)];
        record("translation beta=" + std::to_string(beta), h_plus[static_cast<std::size_t>(beta)], rhs);
    }

    for (std::int64_t j = 1; j < N; ++j) {
        if (std::gcd(j, N) != 1)
            continue;
        const std::int64_t jinv = inverse_mod(j, N);
        BigComplex lhs(work), sum(work);
        for (long beta = 0; beta < 2 * p; ++beta) {
            Rational e1 = frac(beta * beta * j, N);
            Rational e2 = frac(-beta * beta * jinv, N);
            lhs += unit_root(e1, work) * h_inv[static_cast<std::size_t>(beta)];
            sum += unit_root(e2, work) * h_tau[static_cast<std::size_t>(beta)];
        }
        // sqrt((-1/j))^{-1} is 1 or -i.
        BigComplex factor(static_cast<long>(kronecker(N, j)), work);
        if (kronecker(-1, j) == -1)
            factor = factor * BigComplex(BigReal(work), BigReal(-1, work));
        record("multiplier j=" + std::to_string(j), lhs, factor * sqrt_tau * sum);
    }

    // h(-1/tau) = sqrt(tau) e(-1/8) / sqrt(2p) * (e(-l beta / 2p))_{l,beta} h(tau)
    const BigComplex pref = unit_root(Rational(-1, 8), work) * sqrt_tau * (BigReal(1, work) / sqrt(BigReal(2 * p, work)));
    for (long l = 0; l < 2 * p; ++l) {
        BigComplex sum(work);
        for (long beta = 0; beta < 2 * p; ++beta) {
            Rational e = frac(-l * beta, 2 * p);
            sum += unit_root(e, work) * h_tau[static_cast<std::size_t>(beta)];
        }
        record("inversion l=" + std::to_string(l), h_inv[static_cast<std::size_t>(l)], pref * sum);
    }

    if (p == 2) {
        BigComplex lhs = h_inv[0] + h_inv[2];
        BigComplex rhs = unit_root(Rational(-1, 8), work) * sqrt_tau * (h_tau[0] + h_tau[2]);
        record("h0+h2 inversion", lhs, rhs);
    }
    return report;
}

TransformationReport check_transformations(long p, long d, const BigComplex& tau0, unsigned bits, BasisMode mode)
{
    std::int64_t qtrunc = 200;
    for (;;) {
        HalfIntForm f = basis_form(p, d, qtrunc, mode);
        try {
            return check_transformations(f, tau0, bits);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ConvergenceFailure || qtrunc >= 12800)
                throw;
        }
        qtrunc *= 2;
    }
}

} // namespace heegner
