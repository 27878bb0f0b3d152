// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/halfint.hpp"
#include "heegner/jacobi.hpp"
#include "heegner/qseries.hpp"
#include "heegner/quadforms.hpp"
#include "heegner/traces.hpp"

using namespace heegner;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const HalfIntForm* find_form(const std::vector<HalfIntForm>& forms, long d)
{
    for (const auto& f : forms)
        if (f.d == d)
            return &f;
    return nullptr;
}

void golden_row(Outcome& o, const std::vector<HalfIntForm>& forms, long d, const std::vector<long>& exps,
                const std::vector<long>& values)
{
    const HalfIntForm* f = find_form(forms, d);
    if (!f) {
        o.require(false, "missing f_{" + std::to_string(d) + "}");
        return;
    }
    for (std::size_t k = 0; k < exps.size(); ++k)
        o.require(f->series.coeff(exps[k]) == Rational(values[k]),
                  f->label + " at q^" + std::to_string(exps[k]) + " is " + f->series.coeff(exps[k]).get_str());
}

Outcome golden_expansions()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<long> e2{1, 4, 8, 9, 12, 16, 17, 20};
    auto b2 = basis(2, 7);
    golden_row(o, b2, 4, e2, {-52, 272, 2600, -8244, 15300, 71552, -204800, 282880});
    golden_row(o, b2, 7, e2, {-23, -2048, 45056, 252, -516096, 4145152, -1771, -26378240});
    const std::vector<long> e3{1, 4, 9, 12, 13, 16, 21};
    auto b3 = basis(3, 11);
    golden_row(o, b3, 3, e3, {-14, 40, -78, 168, -378, 688, -897});
    golden_row(o, b3, 8, e3, {-34, -188, 2430, 8262, -11968, -34936, 171072});
    golden_row(o, b3, 11, e3, {22, -552, -11178, 48600, 76175, -269744, -1782891});
    golden_row(o, b3, 3, {52, 117}, {133056, -30650256});
    double s = seconds_since(t0);
    o.require(s < 60, "runtime " + std::to_string(s) + " s");
    if (o.pass)
        o.detail = "f_{4,2}, f_{7,2}, f_{3,3}, f_{8,3}, f_{11,3} exact incl. q^52, q^117";
    return o;
}

bool class_set_matches(long d, long p, long beta, const std::vector<std::pair<BQF, int>>& expected)
{
    auto cls = gamma0_classes(d, p, beta);
    if (cls.size() != expected.size())
        return false;
    for (const auto& [q, stab] : expected) {
        int hits = 0;
        for (const auto& c : cls)
            if (gamma0_equivalent(c.form, q, p))
                hits += c.stab_gamma0 == stab ? 1 : 100;
        if (hits != 1)
            return false;
    }
    return true;
}

Outcome class_enumeration()
{
    Outcome o;
    o.require(class_set_matches(16, 2, 0, {{{4, -4, 2}, 2}, {{2, 0, 2}, 1}, {{4, 0, 1}, 1}}),
              "Q_{16,2,0} classes or stabilizers differ");
    // The four reference forms of discriminant -39 all have b = 3 (mod 6); beta = 1 is not a
    // square root of -39 modulo 12 and is rejected.
    o.require(class_set_matches(39, 3, 3, {{{12, 3, 1}, 1}, {{3, 3, 4}, 1}, {{6, 3, 2}, 1}, {{15, 9, 2}, 1}}),
              "Q_{39,3} classes differ");
    bool rejected = false;
    try {
        gamma0_classes(39, 3, 1);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::BadBeta;
    }
    o.require(rejected, "beta = 1 for d = 39 not rejected with BadBeta");
    if (o.pass)
        o.detail = "Q_{16,2,0} with stabilizers (2,1,1); Q_{39,3} four forms (b = 3 mod 6)";
    return o;
}

Outcome twisted_traces()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    const long table[][4] = {{2, 17, 4, -204800}, {2, 8, 7, 90112}, {3, 13, 3, -378}, {3, 13, 8, -11968}, {3, 21, 8, 342144}};
    BigReal worst(0, 64);
    for (const auto& row : table) {
        auto [p, D, d, value] = std::tuple{row[0], row[1], row[2], row[3]};
        std::string tag = "(" + std::to_string(p) + "," + std::to_string(D) + "," + std::to_string(d) + ")";
        try {
            TraceOptions opt;
            opt.bits = 256;
            auto r = twisted_trace(p, D, d, opt);
            o.require(r.recognized == Rational(value), tag + " recognized " + r.recognized.get_str());
            o.require(A_star(basis_form(p, d, D + 1), D) == r.recognized, tag + " differs from A*(D,d)");
            o.require(r.residual < pow10(-20, 64), tag + " residual " + r.residual.to_string(4));
            if (r.residual > worst)
                worst = r.residual;
        } catch (const std::exception& e) {
            o.require(false, tag + " " + e.what());
        }
    }
    double s = seconds_since(t0);
    o.require(s < 120, "runtime " + std::to_string(s) + " s");
    if (o.pass)
        o.detail = "5 values recovered, max recognition residual " + worst.to_string(3);
    return o;
}

Outcome duality()
{
    Outcome o;
    int pairs = 0;
    for (long p : {2L, 3L}) {
        auto forms = basis(p, 30);
        for (long D = 1; D <= 30; ++D) {
            if (!is_square_mod(D, 4 * p))
                continue;
            PhiForm g = phi(D, p);
            for (const auto& f : forms) {
                std::string tag = "p=" + std::to_string(p) + " D=" + std::to_string(D) + " d=" + std::to_string(f.d);
                o.require(coefficient_A(f, D) == -coefficient_B(g, f.d), tag + " A != -B");
                o.require(pairing(f, g) == 0, tag + " pairing nonzero");
                ++pairs;
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(pairs) + " admissible pairs, duality and pairing exact";
    return o;
}

Outcome hecke_lemma()
{
    Outcome o;
    for (auto [D, p] : {std::pair{1L, 2L}, std::pair{1L, 3L}, std::pair{4L, 3L}}) {
        JacobiSeries lhs = hecke_V(phi(D, 1, 11 * p).base, p).truncated(11);
        JacobiSeries rhs = (phi(p * p * D, p, 11).base * Rational(p) + phi(D, p, 11).base).truncated(11);
        o.require(lhs == rhs, "(D,p)=(" + std::to_string(D) + "," + std::to_string(p) + ") differs");
    }
    if (o.pass)
        o.detail = "(1,2), (1,3), (4,3) on rows n <= 10";
    return o;
}

Outcome borcherds_product()
{
    Outcome o;
    BigReal worst(0, 64);
    for (auto [p, d] : {std::pair{2L, 7L}, std::pair{3L, 3L}}) {
        auto r = verify_borcherds_product(p, d, std::nullopt, 256, 12);
        std::string tag = "(" + std::to_string(p) + "," + std::to_string(d) + ")";
        o.require(r.max_residual < pow10(-25, 64), tag + " residual " + r.max_residual.to_string(4));
        if (r.max_residual > worst)
            worst = r.max_residual;
    }
    // log q coefficient against -H over every admissible d <= 40.
    int checked = 0;
    for (long p : {2L, 3L})
        for (long d : admissible_list(p, 40)) {
            if (d < 1)
                continue;
            auto r = verify_borcherds_product(p, d, std::nullopt, 128, 3);
            Rational h = weighted_class_count(gamma0_classes(d, p, r.beta));
            o.require(r.log_q_exact == -h && r.log_q_numeric == -h,
                      "log q coefficient at p=" + std::to_string(p) + " d=" + std::to_string(d));
            ++checked;
        }
    if (o.pass)
        o.detail = "max residual " + worst.to_string(3) + "; log q = -H on " + std::to_string(checked) + " discriminants";
    return o;
}

Outcome twisted_product()
{
    Outcome o;
    auto r = verify_twisted_product(3, 13, 3, 256, 8);
    o.require(r.exponents.size() >= 3 && r.exponents[0] == -378 && r.exponents[1] == 133056 &&
                  r.exponents[2] == Rational(-61300512),
              "exponents differ");
    o.require(r.max_residual < pow10(-25, 64), "residual " + r.max_residual.to_string(4));
    if (o.pass)
        o.detail = "exponents (-378, 133056, -61300512), residual " + r.max_residual.to_string(3);
    return o;
}

Outcome transformations()
{
    Outcome o;
    BigReal worst(0, 64);
    for (auto [p, d] : {std::pair{2L, 4L}, std::pair{3L, 3L}}) {
        std::string tag = "f_{" + std::to_string(d) + "," + std::to_string(p) + "}";
        BigComplex tau(BigReal(0, 256), BigReal(3, 256));
        TransformationReport t = check_transformations(p, d, tau, 256);
        int multipliers = 0;
        bool extra = false;
        for (const auto& c : t.checks) {
            multipliers += c.name.rfind("multiplier", 0) == 0 ? 1 : 0;
            extra = extra || c.name == "h0+h2 inversion";
        }
        int units = 0;
        for (long j = 1; j < 4 * p; ++j)
            units += std::gcd(j, 4 * p) == 1 ? 1 : 0;
        o.require(multipliers == units, tag + " covers " + std::to_string(multipliers) + " multipliers");
        o.require(p != 2 || extra, tag + " lacks the h0+h2 identity");
        o.require(t.max_residual < pow10(-30, 64), tag + " residual " + t.max_residual.to_string(4));
        if (t.max_residual > worst)
            worst = t.max_residual;
    }
    if (o.pass)
        o.detail = "f_{4,2}, f_{3,3} at 3i, max residual " + worst.to_string(3);
    return o;
}

ExactSeries random_series(std::mt19937_64& rng, std::int64_t scale, std::int64_t first, std::int64_t len)
{
    std::vector<Rational> c(static_cast<std::size_t>(len));
    for (auto& x : c)
        x = frac(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4));
    if (sgn(c[0]) == 0)
        c[0] = 1;
    return ExactSeries(scale, first, std::move(c), first + len, Rational(0));
}

Outcome invariants()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20261018);
    auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
    const int n = 200;
    int bad = 0;

    for (int i = 0; i < n; ++i) {
        std::int64_t s = pick(1, 6);
        ExactSeries f = random_series(rng, s, pick(-4, 4), pick(4, 16));
        ExactSeries g = random_series(rng, s, pick(-4, 4), pick(4, 16));
        bad += (f * g).d_operator(1) == f.d_operator(1) * g + f * g.d_operator(1) ? 0 : 1;
    }
    o.require(bad == 0, "Leibniz: " + std::to_string(bad) + " failures");

    bad = 0;
    for (int i = 0; i < n; ++i) {
        ExactSeries f = random_series(rng, 1, pick(-3, 3), 12);
        ExactSeries g = random_series(rng, 1, pick(-3, 3), 12);
        Rational k = frac(pick(1, 24), 2), l = frac(pick(1, 24), 2);
        int m = static_cast<int>(pick(0, 3));
        ExactSeries rhs = rankin_cohen(g, l, f, k, m);
        bad += rankin_cohen(f, k, g, l, m) == (m % 2 == 0 ? rhs : -rhs) ? 0 : 1;
    }
    o.require(bad == 0, "bracket antisymmetry: " + std::to_string(bad) + " failures");

    bad = 0;
    for (int i = 0; i < n; ++i) {
        ExactSeries f = random_series(rng, pick(1, 4), pick(-10, 10), 60);
        std::int64_t a = pick(1, 5), b = pick(1, 5);
        bad += f.hecke_U(a).hecke_U(b) == f.hecke_U(a * b) ? 0 : 1;
    }
    o.require(bad == 0, "U_m composition: " + std::to_string(bad) + " failures");

    bad = 0;
    for (int i = 0; i < n;) {
        BQF q{pick(1, 30), pick(-40, 40), pick(1, 30)};
        if (q.disc() >= 0)
            continue;
        ++i;
        auto [r, g] = reduce(q);
        auto [r2, g2] = reduce(r);
        Mat2 h = Mat2{1, pick(-6, 6), 0, 1} * Mat2{0, -1, 1, 0} * Mat2{1, pick(-6, 6), 0, 1};
        bool ok = is_reduced(r) && act(q, g) == r && r2 == r && g2 == Mat2{} && reduce(act(q, h)).first == r;
        bad += ok ? 0 : 1;
    }
    o.require(bad == 0, "reduction idempotence: " + std::to_string(bad) + " failures");

    struct Twist {
        long p, D, d;
    };
    std::vector<Twist> twists;
    for (long p : {2L, 3L})
        for (long D = 5; D <= 60; ++D)
            for (long d = 3; d <= 40; ++d)
                if (is_fundamental(D) && is_fundamental(-d) && std::gcd(D, d) == 1 && is_square_mod(D, 4 * p) &&
                    is_square_mod(-d, 4 * p))
                    twists.push_back({p, D, d});

    bad = 0;
    for (int i = 0; i < n;) {
        const Twist& t = twists[rng() % twists.size()];
        std::int64_t dd = t.D * t.d;
        std::int64_t beta = 0;
        while (pos_mod(beta * beta + dd, 4 * t.p) != 0)
            ++beta;
        for (const auto& c : gamma0_classes(dd, t.p, beta)) {
            if (i >= n)
                break;
            int chi = genus_char(c.form, t.D, t.d);
            Mat2 g = Mat2{1, pick(-5, 5), 0, 1} * Mat2{1, 0, t.p * pick(-3, 3), 1};
            bad += genus_char(atkin_lehner(c.form, t.p), t.D, t.d) == chi && genus_char(act(c.form, g), t.D, t.d) == chi
                       ? 0
                       : 1;
            ++i;
        }
    }
    o.require(bad == 0, "chi W_p invariance: " + std::to_string(bad) + " failures");

    int beta_bad = 0, integral_bad = 0;
    for (int i = 0; i < n; ++i) {
        const Twist& t = twists[rng() % twists.size()];
        try {
            TraceOptions opt;
            auto r = twisted_trace(t.p, t.D, t.d, opt);
            opt.beta = pos_mod(-r.beta, 2 * t.p);
            auto s = twisted_trace(t.p, t.D, t.d, opt);
            beta_bad += s.recognized == r.recognized ? 0 : 1;
            integral_bad += r.residual < pow10(-20, 64) && s.residual < pow10(-20, 64) && r.status == "ok" ? 0 : 1;
        } catch (const Error&) {
            ++integral_bad;
        }
    }
    o.require(beta_bad == 0, "beta independence: " + std::to_string(beta_bad) + " failures");
    o.require(integral_bad == 0, "integrality: " + std::to_string(integral_bad) + " failures");

    double s = seconds_since(t0);
    o.require(s < 120, "runtime " + std::to_string(s) + " s");
    if (o.pass) {
        std::ostringstream d;
        d.precision(3);
        d << "7 suites x " << n << " cases in " << s << " s";
        o.detail = d.str();
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"golden expansions", golden_expansions},
        {"class enumeration", class_enumeration},
        {"twisted traces", twisted_traces},
        {"duality suite", duality},
        {"Hecke lemma", hecke_lemma},
        {"Borcherds product", borcherds_product},
        {"twisted product", twisted_product},
        {"transformation identities", transformations},
        {"invariant suites", invariants},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << k + 1 << ' ' << criteria[k].first << ": " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
