#include "heegner/traces.hpp"

#include <numeric>
#include <stdexcept>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/halfint.hpp"
#include "heegner/hauptmodul.hpp"
#include "heegner/jacobi.hpp"
#include "heegner/quadforms.hpp"

namespace heegner {

namespace {

constexpr std::int64_t cm_terms = 200;

bool exact_side_available(long p)
{
    return p == 2 || p == 3;
}

long pick_beta(long p, std::int64_t n, const std::optional<long>& requested)
{
    if (requested)
        return *requested;
    for (long b = 0; b < 2 * p; ++b)
        if (pos_mod(static_cast<std::int64_t>(b) * b + n, 4 * p) == 0)
            return b;
    throw Error(ErrorKind::NotAdmissible, "-" + std::to_string(n) + " is not a square modulo " + std::to_string(4 * p));
}

void check_twisted_inputs(long p, long D, long d)
{
    if (D <= 1 || !is_fundamental(D))
        throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a positive fundamental discriminant > 1");
    if (d <= 0 || !is_fundamental(-static_cast<std::int64_t>(d)))
        throw Error(ErrorKind::NotFundamental, "-" + std::to_string(d) + " is not a negative fundamental discriminant");
    if (std::gcd(D, d) != 1)
        throw Error(ErrorKind::NotCoprime, std::to_string(D) + " and -" + std::to_string(d) + " share a factor");
    if (!is_square_mod(D, 4 * p) || !is_square_mod(-static_cast<std::int64_t>(d), 4 * p))
        throw Error(ErrorKind::NotAdmissible, "D and -d must both be squares modulo " + std::to_string(4 * p));
}

BigReal tolerance_of(const TraceOptions& opt)
{
    return opt.tolerance ? *opt.tolerance : default_tolerance(opt.bits);
}

std::string status_of(const Rational& recognized, const std::optional<Rational>& crosscheck)
{
    return !crosscheck || *crosscheck == recognized ? "ok" : "mismatch";
}

/// Coefficients of q^1 .. q^qtrunc in log(q (j_p^*(tau) - c)).
std::vector<BigComplex> log_shifted_difference(const HauptmodulSeries& h, const BigComplex& c, std::int64_t qtrunc,
                                               unsigned work)
{
    std::vector<BigComplex> g;
    g.emplace_back(1, work);
    g.push_back(-c);
    for (std::int64_t k = 2; k <= qtrunc; ++k)
        g.emplace_back(h.series.at(k - 1), work);
    NumSeries s(1, 0, std::move(g), qtrunc + 1, BigComplex(work));
    NumSeries l = s.log();
    std::vector<BigComplex> out;
    for (std::int64_t k = 1; k <= qtrunc; ++k)
        out.push_back(l.at(k));
    return out;
}

BigReal max_deviation(const std::vector<Rational>& exact, const std::vector<BigComplex>& numeric, unsigned work)
{
    BigReal worst(0, work);
    for (std::size_t k = 0; k < exact.size(); ++k) {
        BigReal r = abs(numeric[k] - BigComplex(exact[k], work));
        if (r > worst)
            worst = r;
    }
    return worst;
}

} // namespace

BigReal default_tolerance(unsigned bits)
{
    return pow10(-20, bits);
}

Integer recognize_integer(const BigComplex& value, const BigReal& tolerance, BigReal* residual)
{
    Integer n = value.real().round();
    BigReal scale = abs(value);
    BigReal one(1, value.bits());
    if (scale < one)
        scale = one;
    BigReal r = abs(value - BigComplex(BigReal(n, value.bits()), BigReal(value.bits()))) / scale;
    if (residual)
        *residual = r;
    if (!(r < tolerance))
        throw Error(ErrorKind::RecognitionFailure,
                    "nearest integer " + n.get_str() + " is off by relative " + r.to_string(6));
    return n;
}

QuadIntegerValue recognize_sqrt_multiple(const BigComplex& value, long D, const BigReal& tolerance)
{
    BigReal root = sqrt(BigReal(D, value.bits()));
    BigComplex scaled = value;
    scaled *= BigReal(1, value.bits()) / root;
    QuadIntegerValue out;
    out.D = D;
    out.a = 0;
    out.b = Rational(recognize_integer(scaled, tolerance, &out.residual));
    return out;
}

TraceReport trace(long p, long d, const TraceOptions& opt)
{
    TraceReport r;
    r.kind = "trace";
    r.p = p;
    r.d = d;
    r.status = "ok";
    const unsigned work = opt.bits + 32;
    if (d == -1 || d == 0) {
        r.recognized = d == -1 ? -1 : 2;
        r.numeric = BigComplex(r.recognized, work);
        r.residual = BigReal(0, work);
        return r;
    }
    if (d < -1 || !is_square_mod(-static_cast<std::int64_t>(d), 4 * p))
        throw Error(ErrorKind::NotAdmissible, "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    r.beta = pick_beta(p, d, opt.beta);
    HauptmodulSeries h = qexp(p, cm_terms);
    auto classes = gamma0_classes(d, p, r.beta);
    r.classes = classes.size();
    BigComplex sum(work);
    for (const auto& rep : classes) {
        BigComplex v = evaluate_cm(h, rep, opt.bits);
        v *= rep.weight_gamma0();
        sum += v;
    }
    r.numeric = sum;
    r.recognized = Rational(recognize_integer(sum, tolerance_of(opt), &r.residual));
    if (exact_side_available(p))
        r.crosscheck = coefficient_A(basis_form(p, d, 2), 1);
    r.status = status_of(r.recognized, r.crosscheck);
    return r;
}

TraceReport twisted_trace(long p, long D, long d, const TraceOptions& opt)
{
    check_twisted_inputs(p, D, d);
    TraceReport r;
    r.kind = "twisted-trace";
    r.p = p;
    r.D = D;
    r.d = d;
    const unsigned work = opt.bits + 32;
    r.beta = pick_beta(p, static_cast<std::int64_t>(d) * D, opt.beta);
    HauptmodulSeries h = qexp(p, cm_terms);
    auto classes = gamma0_classes(static_cast<std::int64_t>(d) * D, p, r.beta);
    r.classes = classes.size();
    BigComplex sum(work);
    for (const auto& rep : classes) {
        BigComplex v = evaluate_cm(h, rep, opt.bits);
        v *= Rational(genus_char(rep.form, D, d));
        sum += v;
    }
    r.numeric = sum;
    QuadIntegerValue q = recognize_sqrt_multiple(sum, D, tolerance_of(opt));
    r.recognized = q.b;
    r.residual = q.residual;
    if (exact_side_available(p))
        r.crosscheck = A_star(basis_form(p, d, D + 1), D);
    r.status = status_of(r.recognized, r.crosscheck);
    return r;
}

TraceReport twisted_faber_trace(long p, long D, long d, long m, const TraceOptions& opt)
{
    if (m < 1)
        throw std::invalid_argument("Faber index must be positive");
    check_twisted_inputs(p, D, d);
    TraceReport r;
    r.kind = "faber-trace";
    r.p = p;
    r.D = D;
    r.d = d;
    r.m = m;
    const unsigned work = opt.bits + 32;
    r.beta = pick_beta(p, static_cast<std::int64_t>(d) * D, opt.beta);
    HauptmodulSeries h = qexp(p, std::max<std::int64_t>(cm_terms, m + 3));
    FaberPoly t = faber(h, m);
    auto classes = gamma0_classes(static_cast<std::int64_t>(d) * D, p, r.beta);
    r.classes = classes.size();
    BigComplex sum(work);
    for (const auto& rep : classes) {
        BigComplex v = t(evaluate_cm(h, rep, opt.bits));
        v *= Rational(genus_char(rep.form, D, d));
        sum += v;
    }
    r.numeric = sum;
    QuadIntegerValue q = recognize_sqrt_multiple(sum, D, tolerance_of(opt));
    r.recognized = q.b;
    r.residual = q.residual;
    if (exact_side_available(p)) {
        Rational acc = 0;
        std::int64_t rows = (d + static_cast<std::int64_t>(p) * p) / (4 * p) + 2;
        for (std::int64_t u : divisors(m)) {
            int chi = kronecker(D, m / u);
            if (chi == 0)
                continue;
            PhiForm g = phi(static_cast<long>(u * u * D), p, rows);
            acc += Rational(u * chi) * B_star(g, d);
        }
        r.crosscheck = -acc;
    }
    r.status = status_of(r.recognized, r.crosscheck);
    return r;
}

ProductReport verify_borcherds_product(long p, long d, std::optional<long> beta, unsigned bits, std::int64_t qtrunc)
{
    if (qtrunc < 1)
        throw std::invalid_argument("qtrunc must be positive");
    if (d < 1 || !is_square_mod(-static_cast<std::int64_t>(d), 4 * p))
        throw Error(ErrorKind::NotAdmissible, "-" + std::to_string(d) + " is not a square modulo " + std::to_string(4 * p));
    const unsigned work = bits + 32;
    ProductReport r;
    r.kind = "product";
    r.p = p;
    r.d = d;
    r.qtrunc = qtrunc;
    r.beta = pick_beta(p, d, beta);
    auto classes = gamma0_classes(d, p, r.beta);

    HalfIntForm f = basis_form(p, d, qtrunc * qtrunc + 1);
    for (std::int64_t u = 1; u <= qtrunc; ++u)
        r.exponents.push_back(A_star(f, static_cast<long>(u * u)));
    for (std::int64_t n = 1; n <= qtrunc; ++n) {
        Rational acc = 0;
        for (std::int64_t u : divisors(n))
            acc -= r.exponents[static_cast<std::size_t>(u - 1)] * Rational(u, n);
        r.exact.push_back(acc);
    }
    r.log_q_exact = -weighted_class_count(classes);

    HauptmodulSeries h = qexp(p, std::max<std::int64_t>(cm_terms, qtrunc + 2));
    r.numeric.assign(static_cast<std::size_t>(qtrunc), BigComplex(work));
    r.log_q_numeric = 0;
    for (const auto& rep : classes) {
        BigComplex c = evaluate_cm(h, rep, bits);
        std::vector<BigComplex> l = log_shifted_difference(h, c, qtrunc, work);
        Rational w = rep.weight_gamma0();
        r.log_q_numeric += w * h.series.valuation();
        for (std::size_t k = 0; k < l.size(); ++k) {
            l[k] *= w;
            r.numeric[k] += l[k];
        }
    }
    r.max_residual = max_deviation(r.exact, r.numeric, work);
    r.status = r.max_residual < pow10(-25, work) && r.log_q_exact == r.log_q_numeric ? "ok" : "residual-breach";
    return r;
}

ExactSeries p_d_log_series(long D, long u, std::int64_t qtrunc)
{
    if (D <= 1 || !is_fundamental(D))
        throw Error(ErrorKind::NotFundamental, std::to_string(D) + " is not a positive fundamental discriminant > 1");
    if (u < 1)
        throw std::invalid_argument("u must be positive");
    std::vector<Rational> c(static_cast<std::size_t>(qtrunc + 1));
    for (std::int64_t m = 1; u * m <= qtrunc; ++m)
        c[static_cast<std::size_t>(u * m)] = frac(-kronecker(D, m), m);
    return exact_from(0, c, qtrunc + 1);
}

ProductReport verify_twisted_product(long p, long D, long d, unsigned bits, std::int64_t qtrunc)
{
    if (qtrunc < 1)
        throw std::invalid_argument("qtrunc must be positive");
    check_twisted_inputs(p, D, d);
    const unsigned work = bits + 32;
    ProductReport r;
    r.kind = "twisted-product";
    r.p = p;
    r.D = D;
    r.d = d;
    r.qtrunc = qtrunc;
    r.beta = pick_beta(p, static_cast<std::int64_t>(d) * D, std::nullopt);
    auto classes = gamma0_classes(static_cast<std::int64_t>(d) * D, p, r.beta);

    HalfIntForm f = basis_form(p, d, qtrunc * qtrunc * D + 1);
    ExactSeries rhs = exact_zero(1, qtrunc + 1);
    for (std::int64_t u = 1; u <= qtrunc; ++u) {
        r.exponents.push_back(A_star(f, static_cast<long>(u * u * D)));
        rhs += p_d_log_series(D, static_cast<long>(u), qtrunc).times(r.exponents.back());
    }
    for (std::int64_t n = 1; n <= qtrunc; ++n)
        r.exact.push_back(rhs.coeff(n));
    r.log_q_exact = 0;

    HauptmodulSeries h = qexp(p, std::max<std::int64_t>(cm_terms, qtrunc + 2));
    r.numeric.assign(static_cast<std::size_t>(qtrunc), BigComplex(work));
    r.log_q_numeric = 0;
    const BigReal inv_root = BigReal(1, work) / sqrt(BigReal(D, work));
    for (const auto& rep : classes) {
        int chi = genus_char(rep.form, D, d);
        BigComplex c = evaluate_cm(h, rep, bits);
        std::vector<BigComplex> l = log_shifted_difference(h, c, qtrunc, work);
        r.log_q_numeric += Rational(chi * h.series.valuation());
        for (std::size_t k = 0; k < l.size(); ++k) {
            l[k] *= Rational(chi);
            l[k] *= inv_root;
            r.numeric[k] += l[k];
        }
    }
    r.max_residual = max_deviation(r.exact, r.numeric, work);
    r.status = r.max_residual < pow10(-25, work) && r.log_q_exact == r.log_q_numeric ? "ok" : "residual-breach";
    return r;
}

namespace {

std::string decimal(const BigReal& x)
{
    return x.to_string(30);
}

nlohmann::json complex_json(const BigComplex& z)
{
    return {{"re", decimal(z.real())}, {"im", decimal(z.imag())}, {"bits", z.bits()}};
}

} // namespace

nlohmann::json to_json(const TraceReport& r)
{
    nlohmann::json inputs{{"p", r.p}, {"d", r.d}, {"beta", r.beta}};
    if (r.kind != "trace")
        inputs["D"] = r.D;
    if (r.kind == "faber-trace")
        inputs["m"] = r.m;
    return {{"kind", r.kind},
            {"inputs", inputs},
            {"classes", r.classes},
            {"numeric", complex_json(r.numeric)},
            {"recognized", r.recognized.get_str()},
            {"crosscheck", r.crosscheck ? nlohmann::json(r.crosscheck->get_str()) : nlohmann::json(nullptr)},
            {"residual", r.residual.to_string(6)},
            {"status", r.status}};
}

nlohmann::json to_json(const ProductReport& r)
{
    nlohmann::json inputs{{"p", r.p}, {"d", r.d}, {"beta", r.beta}, {"qtrunc", r.qtrunc}};
    if (r.kind == "twisted-product")
        inputs["D"] = r.D;
    nlohmann::json exps = nlohmann::json::array(), exact = nlohmann::json::array(), numeric = nlohmann::json::array();
    for (const auto& e : r.exponents)
        exps.push_back(e.get_str());
    for (const auto& e : r.exact)
        exact.push_back(e.get_str());
    for (const auto& z : r.numeric)
        numeric.push_back(complex_json(z));
    return {{"kind", r.kind},
            {"inputs", inputs},
            {"exponents", exps},
            {"log_q", {{"exact", r.log_q_exact.get_str()}, {"numeric", r.log_q_numeric.get_str()}}},
            {"exact", exact},
            {"numeric", numeric},
            {"residual", r.max_residual.to_string(6)},
            {"status", r.status}};
}

} // namespace heegner
