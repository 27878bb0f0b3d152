#include <doctest.h>

#include <random>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/halfint.hpp"
#include "heegner/hauptmodul.hpp"
#include "heegner/numeric.hpp"
#include "support.hpp"

using namespace heegner;

namespace {

using Poly = std::vector<Integer>;

Poly poly_mul(const Poly& a, const Poly& b, std::size_t len)
{
    Poly out(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_inverse(const Poly& a, std::size_t len)
{
    Poly out(len);
    out[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        Integer acc = 0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k)
            acc += a[k] * out[n - k];
        out[n] = -acc;
    }
    return out;
}

// j_2^* = q^{-1} prod (1 + q^n)^{-24} + 24 + 4096 q prod (1 + q^n)^{24}, multiplied out directly.
std::vector<Integer> level_two_oracle(std::size_t len)
{
    Poly prod(len + 2);
    prod[0] = 1;
    for (std::size_t n = 1; n < len + 2; ++n) {
        Poly factor(n + 1);
        factor[0] = 1;
        factor[n] = 1;
        for (int k = 0; k < 24; ++k)
            prod = poly_mul(prod, factor, len + 2);
    }
    Poly inv = poly_inverse(prod, len + 2);
    // coefficient of q^m for m = -1 .. len - 2
    std::vector<Integer> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        out[i] = inv[i];
        if (i >= 2)
            out[i] += 4096 * prod[i - 2];
    }
    out[1] += 24;
    return out;
}

BigComplex point(const char* text, unsigned bits = 256)
{
    return parse_complex(text, bits);
}

} // namespace

TEST_CASE("level 2 Hauptmodul matches a direct product expansion")
{
    auto h = qexp(2, 30);
    auto oracle = level_two_oracle(31);
    for (long n = -1; n < 30; ++n)
        CHECK(h.series.coeff(n) == Rational(oracle[static_cast<std::size_t>(n + 1)]));
    CHECK(h.series.coeff(1) == Rational(4372));
    CHECK(h.series.coeff(2) == Rational(96256));
}

TEST_CASE("Hauptmodul normalization for every prime with a closed formula")
{
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        INFO("p=" << p);
        auto h = qexp(p, 60);
        CHECK(h.series.valuation() == -1);
        CHECK(h.series.coeff(-1) == Rational(1));
        CHECK(h.series.coeff(0) == Rational(0));
        for (const Rational& c : h.series.coeffs())
            CHECK(is_integer(c));
    }
    CHECK(qexp(3, 10).series.coeff(1) == Rational(783));
}

TEST_CASE("primes without a closed formula use the extension hook")
{
    for (long p : {11L, 17L, 4L, 1L}) {
        try {
            qexp(p, 20);
            FAIL("expected UnsupportedPrime");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnsupportedPrime);
        }
    }
    // Made-up coefficients: the hook only checks the normalization.
    ExactSeries fake = exact_from(-1, {Rational(1), Rational(0), Rational(17), Rational(46), Rational(116)}, 4);
    auto h = from_expansion(11, fake);
    CHECK(h.p == 11);
    CHECK(faber(h, 2).coeffs == std::vector<Rational>{Rational(-34), Rational(0), Rational(1)});
    CHECK_THROWS_AS(from_expansion(11, fake.plus_constant(Rational(1))), std::invalid_argument);
    CHECK_THROWS_AS(from_expansion(11, fake.times(frac(1, 2))), std::invalid_argument);
    try {
        evaluate_hauptmodul(h, point("0.1i"), 128);
        FAIL("expected ConvergenceFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConvergenceFailure);
    }
}

TEST_CASE("classical j")
{
    ExactSeries j = classical_j(5);
    CHECK(j.coeff(-1) == Rational(1));
    CHECK(j.coeff(0) == Rational(744));
    CHECK(j.coeff(1) == Rational(196884));
    CHECK(j.coeff(2) == Rational(21493760));
    CHECK(classical_faber(1).coeffs == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(classical_faber(2).coeffs == std::vector<Rational>{Rational(-393768), Rational(0), Rational(1)});
}

TEST_CASE("Faber polynomials")
{
    auto h = qexp(2, 40);
    CHECK(faber(h, 1).coeffs == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(faber(h, 2).coeffs == std::vector<Rational>{Rational(-8744), Rational(0), Rational(1)});
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        auto hp = qexp(p, 40);
        for (long m = 1; m <= 12; ++m) {
            INFO("p=" << p << " m=" << m);
            FaberPoly t = faber(hp, m);
            ExactSeries rest = t.apply(hp.series) - ExactSeries::monomial(Rational(1), -m, 1, 40);
            CHECK((rest.is_zero() || rest.valuation() >= 1));
            for (const Rational& c : t.coeffs)
                CHECK(is_integer(c));
        }
    }
    try {
        faber(qexp(2, 5), 4);
        FAIL("expected InsufficientTruncation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientTruncation);
    }
}

TEST_CASE("expansion formula t_{p m} = J_m(p tau) + J_m(tau) - t_m(tau)")
{
    for (long p : {2L, 3L}) {
        auto h = qexp(p, 60);
        ExactSeries J = classical_j(60).plus_constant(Rational(-744));
        for (long m : {1L, p}) {
            INFO("p=" << p << " m=" << m);
            FaberPoly Jm = faber_of(J, m);
            ExactSeries lhs = faber(h, p * m).apply(h.series);
            ExactSeries rhs = Jm.apply(J).dilate(p) + Jm.apply(J) - faber(h, m).apply(h.series);
            ExactSeries diff = lhs - rhs;
            CHECK(diff.is_zero());
            CHECK(diff.trunc() > 10);
        }
        // Numerically at tau = 1.3 i for m = 1.
        const unsigned bits = 256;
        BigComplex tau = point("1.3i", bits);
        BigComplex t = evaluate_hauptmodul(h, tau, bits);
        ExactSeries Jlong = classical_j(400).plus_constant(Rational(-744));
        BigComplex lhs = faber(h, p)(t);
        BigComplex ptau = tau * BigComplex(p, bits);
        BigComplex rhs = evaluate(Jlong, ptau, bits) + evaluate(Jlong, tau, bits) - t;
        CHECK(relative_residual(lhs, rhs) < pow10(-20, bits));
    }
}

TEST_CASE("point reduction")
{
    BigComplex z = reduce_point(point("0.5i"), 2);
    CHECK(abs(z - point("1i")) < pow10(-60, 256));
    BigComplex high = point("0.3+1.5i");
    CHECK(abs(reduce_point(high, 2) - high) < pow10(-60, 256));
    // alpha for [15, 9, 2] at level 3.
    BigComplex alpha(BigReal(-9, 256) / BigReal(30, 256), sqrt(BigReal(39, 256)) / BigReal(30, 256));
    BigComplex r = reduce_point(alpha, 3);
    CHECK(r.imag() > alpha.imag());
    CHECK(BigReal(3, 256) * norm(r) >= BigReal(1, 256) - pow10(-50, 256));
    try {
        reduce_point(point("1-1i"), 2);
        FAIL("expected NotUpperHalfPlane");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUpperHalfPlane);
    }
}

TEST_CASE("Fricke invariance at 0.1 + 0.8i")
{
    for (long p : {2L, 3L, 5L}) {
        auto h = qexp(p, 100);
        BigComplex tau = point("0.1+0.8i");
        BigComplex a = evaluate_hauptmodul(h, tau, 256);
        BigComplex b = evaluate_hauptmodul(h, -(BigComplex(1, 288) / (BigComplex(p, 288) * tau)), 256);
        CHECK(abs(a - b) < pow10(-20, 256));
        CHECK(fricke_residual(h, tau, 256) < pow10(-60, 256));
    }
}

TEST_CASE("genus-weighted CM values at level 3, discriminant -39")
{
    auto h = qexp(3, 100);
    const unsigned bits = 256;
    BigComplex sum(bits + 32);
    for (const auto& rep : gamma0_classes(39, 3, 3))
        sum += evaluate_cm(h, rep, bits) * BigReal(genus_char(rep.form, 13, 3), bits + 32);
    BigComplex expected(BigReal(-378, bits) * sqrt(BigReal(13, bits)), BigReal(bits));
    CHECK(abs(sum - expected) < pow10(-40, bits));
}

TEST_CASE("weighted CM values at level 2, discriminant -16, give A(1, 16)")
{
    auto h = qexp(2, 100);
    const unsigned bits = 256;
    BigComplex sum(bits + 32);
    for (const auto& rep : gamma0_classes(16, 2, 0)) {
        BigComplex v = evaluate_cm(h, rep, bits);
        v *= rep.weight_gamma0();
        sum += v;
    }
    Rational expected = coefficient_A(basis_form(2, 16), 1);
    CHECK(abs(sum - BigComplex(expected, bits)) < pow10(-40, bits));
}

TEST_CASE("CM evaluation is deterministic")
{
    auto h = qexp(2, 100);
    auto reps = gamma0_classes(68, 2, 2);
    REQUIRE_FALSE(reps.empty());
    BigComplex a = evaluate_cm(h, reps.front(), 256);
    BigComplex b = evaluate_cm(h, reps.front(), 256);
    CHECK(a.real().to_string() == b.real().to_string());
    CHECK(a.imag().to_string() == b.imag().to_string());
}

TEST_CASE("property: values at reduced and unreduced CM points agree")
{
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        long p = rng() % 2 == 0 ? 2 : 3;
        auto h = qexp(p, 200);
        // a = p k, and b chosen so that alpha already sits reasonably high before reduction.
        std::int64_t a = p * static_cast<std::int64_t>(1 + rng() % 3);
        std::int64_t b = static_cast<std::int64_t>(rng() % static_cast<unsigned long>(2 * a)) - a + 1;
        std::int64_t c = (b * b) / (4 * a) + 1 + static_cast<std::int64_t>(rng() % 6);
        std::int64_t d = 4 * a * c - b * b;
        ClassRep rep{BQF{a, b, c}};
        rep.heegner_re = -b;
        rep.heegner_d = d;
        rep.heegner_den = 2 * a;
        BigComplex alpha = heegner_point(rep, 288);
        if (alpha.imag() < BigReal(Rational(3, 10), 288))
            continue;
        ++checked;
        BigComplex direct = evaluate_hauptmodul(h, alpha, 128);
        BigComplex reduced = evaluate_cm(h, rep, 128);
        CHECK(relative_residual(direct, reduced) < pow10(-32, 128));
    }
    CHECK(checked >= 50);
}
