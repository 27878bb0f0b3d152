#include <doctest.h>

#include <map>
#include <random>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/halfint.hpp"
#include "support.hpp"

using namespace heegner;

namespace {

const HalfIntForm& find(const std::vector<HalfIntForm>& forms, long d)
{
    for (const auto& f : forms)
        if (f.d == d)
            return f;
    FAIL("missing basis element");
    return forms.front();
}

void check_row(const HalfIntForm& f, const std::vector<long>& exps, const std::vector<long>& expected)
{
    REQUIRE(exps.size() == expected.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        INFO(f.label << " q^" << exps[i]);
        CHECK(f.series.coeff(exps[i]) == Rational(expected[i]));
    }
}

BigComplex point(long re, long im)
{
    return BigComplex(BigReal(re, 256), BigReal(im, 256));
}

} // namespace

TEST_CASE("level 8 basis reproduces the reference expansions")
{
    auto forms = basis(2, 7);
    const std::vector<long> exps{1, 4, 8, 9, 12, 16, 17, 20};
    check_row(find(forms, 4), exps, {-52, 272, 2600, -8244, 15300, 71552, -204800, 282880});
    check_row(find(forms, 7), exps, {-23, -2048, 45056, 252, -516096, 4145152, -1771, -26378240});
    CHECK(find(forms, 4).series.valuation() == -4);
    CHECK(find(forms, 7).series.valuation() == -7);
}

TEST_CASE("level 12 basis reproduces the reference expansions")
{
    auto forms = basis(3, 11);
    CHECK(forms.size() == 3);
    const std::vector<long> exps{1, 4, 9, 12, 13, 16, 21};
    check_row(find(forms, 3), exps, {-14, 40, -78, 168, -378, 688, -897});
    check_row(find(forms, 8), exps, {-34, -188, 2430, 8262, -11968, -34936, 171072});
    check_row(find(forms, 11), exps, {22, -552, -11178, 48600, 76175, -269744, -1782891});
    check_row(find(forms, 3), {52, 117}, {133056, -30650256});
}

TEST_CASE("basis combinations match the generator formulas")
{
    auto g2 = build_generators(2, 60);
    REQUIRE(g2.size() == 2);
    auto f42 = basis_form(2, 4, 50);
    auto f72 = basis_form(2, 7, 50);
    CHECK(((g2[1] - g2[0]).times(frac(1, 12))).truncated(50) == f42.series.truncated(50));
    CHECK(((g2[0] * Rational(4) - g2[1]).times(frac(1, 3))).truncated(50) == f72.series.truncated(50));

    auto g3 = build_generators(3, 60);
    REQUIRE(g3.size() == 3);
    auto f33 = basis_form(3, 3, 50);
    auto f83 = basis_form(3, 8, 50);
    auto f113 = basis_form(3, 11, 50);
    CHECK(((g3[0] * Rational(4) - g3[1] * Rational(5) + g3[2]).times(frac(1, 360))).truncated(50)
          == f33.series.truncated(50));
    CHECK(((g3[1] * Rational(10) - g3[0] * Rational(9) - g3[2]).times(frac(1, 60))).truncated(50)
          == f83.series.truncated(50));
    CHECK(((g3[0] * Rational(36) - g3[1] * Rational(13) + g3[2]).times(frac(1, 24))).truncated(50)
          == f113.series.truncated(50));
}

TEST_CASE("the level 8 weight 10 bracket fixes the normalization of u")
{
    const std::int64_t trunc = 40;
    ExactSeries th = theta(trunc + 8);
    ExactSeries e10 = eisenstein(10, trunc / 8 + 3).dilate(8);
    ExactSeries br = rankin_cohen(th, frac(1, 2), e10, Rational(10), 1) / delta(trunc / 8 + 3).dilate(8);
    CHECK(br.valuation() == -7);
    CHECK(br.coeff(-7) == Rational(-20));
    CHECK(br.coeff(-4) == Rational(-80));
    CHECK(br.coeff(0) == Rational(-1056));
    // Printed shift 2112 and divisor -40 leave a leading 1/2; 1056 and -20 give a monic u.
    ExactSeries printed = (br + th * Rational(2112)).times(frac(-1, 40));
    CHECK(printed.coeff(-7) == frac(1, 2));
    ExactSeries u = build_generators(2, trunc)[0];
    CHECK(u.coeff(-7) == Rational(1));
    CHECK(u.coeff(0) == Rational(0));
}

TEST_CASE("admissible discriminants")
{
    CHECK(admissible_list(3, 12) == std::vector<long>{3, 8, 11, 12});
    CHECK(admissible_list(2, 16) == std::vector<long>{4, 7, 8, 12, 15, 16});
    CHECK_FALSE(admissible(2, 5));
    try {
        basis_form(2, 5);
        FAIL("expected NotAdmissible");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAdmissible);
    }
}

TEST_CASE("coefficients A and A*")
{
    auto f42 = basis_form(2, 4);
    auto f72 = basis_form(2, 7);
    CHECK(coefficient_A(f42, 17) == Rational(-204800));
    CHECK(A_star(f42, 17) == Rational(-204800));
    CHECK(A_star(f72, 8) == Rational(90112));
    CHECK(coefficient_A(f42, 5) == Rational(0));
    CHECK(coefficient_A(f42, -4) == Rational(1));
    try {
        coefficient_A(f42, 10000);
        FAIL("expected BeyondTruncation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BeyondTruncation);
    }
}

TEST_CASE("vector-valued components")
{
    auto f = basis_form(2, 4);
    auto v = vector_components(f);
    REQUIRE(v.h.size() == 4);
    CHECK(v.h[0].scale() == 8);
    // h_0 collects n = 0 mod 8 with weight 1: c(8) sits at q^{8/8}.
    CHECK(v.h[0].coeff(Rational(1)) == Rational(2600));
    CHECK(v.h[0].coeff(frac(-4, 8)) == Rational(0));
    // h_2 collects n = 4 mod 8 with weight 1, h_1 = h_3 collect n = 1 mod 8 with weight 1/2.
    CHECK(v.h[2].coeff(frac(-4, 8)) == Rational(1));
    CHECK(v.h[1].coeff(frac(17, 8)) == Rational(-102400));
    CHECK(v.h[1] == v.h[3]);
    CHECK(reassemble(v) == f.series);

    auto g = basis_form(3, 8);
    auto w = vector_components(g);
    REQUIRE(w.h.size() == 6);
    for (long beta = 1; beta < 6; ++beta)
        CHECK(w.h[beta] == w.h[6 - beta]);
    CHECK(reassemble(w) == g.series);
}

TEST_CASE("transformation identities at 3i")
{
    const BigReal bound = pow10(-30, 256);
    for (auto [p, d] : {std::pair{2L, 4L}, std::pair{3L, 3L}}) {
        auto r = check_transformations(p, d, point(0, 3), 256);
        INFO("p=" << p << " d=" << d << " max " << r.max_residual.to_string(6));
        CHECK(r.max_residual < bound);
        bool has_multiplier = false, has_extra = false;
        for (const auto& c : r.checks) {
            has_multiplier = has_multiplier || c.name.rfind("multiplier", 0) == 0;
            has_extra = has_extra || c.name.rfind("h0+h2", 0) == 0;
        }
        CHECK(has_multiplier);
        CHECK(has_extra == (p == 2));
    }
}

TEST_CASE("transformation identities off the imaginary axis")
{
    auto r = check_transformations(3, 3, point(2, 2), 256);
    CHECK(r.max_residual < pow10(-30, 256));
}

TEST_CASE("short expansions are rejected by the transformation check")
{
    auto f = basis_form(2, 4, 30);
    try {
        check_transformations(f, point(0, 1), 256);
        FAIL("expected ConvergenceFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConvergenceFailure);
    }
    try {
        check_transformations(f, point(0, -1), 256);
        FAIL("expected NotUpperHalfPlane");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUpperHalfPlane);
    }
}

TEST_CASE("unsupported primes")
{
    try {
        build_generators(5, 140);
        FAIL("expected UnsupportedPrime");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedPrime);
    }
    try {
        basis(5, 20);
        FAIL("expected UnsupportedPrime");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedPrime);
    }
    // The general family does not reach every admissible d at level 20.
    try {
        basis(5, 20, 60, BasisMode::General);
        FAIL("expected SingularSystem");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularSystem);
    }
}

TEST_CASE("general generator family agrees with the fixed generators")
{
    for (long p : {2L, 3L}) {
        auto fixed = basis(p, 16, 60);
        auto general = basis(p, 16, 60, BasisMode::General);
        REQUIRE(fixed.size() == general.size());
        for (std::size_t i = 0; i < fixed.size(); ++i)
            CHECK(fixed[i].series == general[i].series);
    }
}

TEST_CASE("basis coefficients are integers")
{
    for (long p : {2L, 3L})
        for (const auto& f : basis(p, 12))
            for (long D = 1; D <= 120; ++D)
                CHECK(is_integer(coefficient_A(f, D)));
}

TEST_CASE("property: plus support, echelon shape and integrality of random basis entries")
{
    std::map<long, std::vector<HalfIntForm>> forms;
    forms[2] = basis(2, 40);
    forms[3] = basis(3, 40);
    std::mt19937_64 rng(20261018);
    for (int trial = 0; trial < 400; ++trial) {
        long p = rng() % 2 == 0 ? 2 : 3;
        const auto& list = forms[p];
        const HalfIntForm& f = list[rng() % list.size()];
        long n = static_cast<long>(rng() % 141);
        INFO(f.label << " n=" << n);
        Rational c = f.series.coeff(n);
        if (!is_square_mod(n, 4 * p))
            CHECK(c == Rational(0));
        CHECK(is_integer(c));
        long e = -static_cast<long>(rng() % static_cast<unsigned long>(f.d));
        CHECK(f.series.coeff(e) == Rational(0));
        CHECK(f.series.coeff(-f.d) == Rational(1));
    }
}
