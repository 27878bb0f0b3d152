#include "heegner/quadforms.hpp"

#include <algorithm>
#include <numeric>

#include "heegner/errors.hpp"

namespace heegner {

std::string to_string(const BQF& q)
{
    return "[" + std::to_string(q.a) + "," + std::to_string(q.b) + "," + std::to_string(q.c) + "]";
}

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 inverse(const Mat2& m)
{
    return {m.d, -m.b, -m.c, m.a};
}

BQF act(const BQF& q, const Mat2& g)
{
    return {q(g.a, g.c), 2 * q.a * g.a * g.b + q.b * (g.a * g.d + g.b * g.c) + 2 * q.c * g.c * g.d, q(g.b, g.d)};
}

namespace {

void require_positive_definite(const BQF& q)
{
    if (q.disc() >= 0 || q.a <= 0)
        throw Error(ErrorKind::NotPositiveDefinite, to_string(q) + " is not positive definite");
}

void require_discriminant(std::int64_t d)
{
    if (d <= 0 || (pos_mod(-d, 4) != 0 && pos_mod(-d, 4) != 1))
        throw Error(ErrorKind::BadDiscriminant, "-" + std::to_string(d) + " is not a negative discriminant");
}

} // namespace

bool is_reduced(const BQF& q)
{
    if (std::abs(q.b) > q.a || q.a > q.c)
        return false;
    if ((std::abs(q.b) == q.a || q.a == q.c) && q.b < 0)
        return false;
    return true;
}

std::pair<BQF, Mat2> reduce(const BQF& q)
{
    require_positive_definite(q);
    BQF r = q;
    Mat2 g;
    const Mat2 S{0, -1, 1, 0};
    for (;;) {
        // Bring b into (-a, a].
        std::int64_t k = floor_div(r.a - r.b, 2 * r.a);
        if (k != 0) {
            Mat2 t{1, k, 0, 1};
            r = act(r, t);
            g = g * t;
        }
        if (r.a > r.c || (r.a == r.c && r.b < 0)) {
            r = act(r, S);
            g = g * S;
            continue;
        }
        break;
    }
    return {r, g};
}

std::vector<Mat2> automorphs(const BQF& reduced)
{
    std::vector<Mat2> out;
    for (std::int64_t a = -1; a <= 1; ++a)
        for (std::int64_t b = -1; b <= 1; ++b)
            for (std::int64_t c = -1; c <= 1; ++c)
                for (std::int64_t d = -1; d <= 1; ++d) {
                    Mat2 m{a, b, c, d};
                    if (m.det() == 1 && act(reduced, m) == reduced)
                        out.push_back(m);
                }
    return out;
}

std::vector<WeightedForm> class_list(std::int64_t d)
{
    require_discriminant(d);
    std::vector<WeightedForm> out;
    for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (pos_mod(b * b + d, 4 * a) != 0)
                continue;
            std::int64_t c = (b * b + d) / (4 * a);
            BQF q{a, b, c};
            if (!is_reduced(q))
                continue;
            int order = static_cast<int>(automorphs(q).size()) / 2;
            out.push_back({q, Rational(1, order)});
        }
    }
    return out;
}

Rational hurwitz(std::int64_t d)
{
    if (d <= 0 || (pos_mod(-d, 4) != 0 && pos_mod(-d, 4) != 1))
        return 0;
    Rational h(0);
    for (const auto& w : class_list(d))
        h += w.weight;
    return h;
}

std::optional<Mat2> gamma0_equivalent(const BQF& q1, const BQF& q2, std::int64_t p)
{
    if (q1.disc() != q2.disc())
        throw Error(ErrorKind::DiscriminantMismatch, to_string(q1) + " and " + to_string(q2) + " differ in discriminant");
    auto [r1, g1] = reduce(q1);
    auto [r2, g2] = reduce(q2);
    if (r1 != r2)
        return std::nullopt;
    const Mat2 g2inv = inverse(g2);
    for (const Mat2& s : automorphs(r1)) {
        Mat2 g = g1 * s * g2inv;
        if (pos_mod(g.c, p) == 0) {
            if (act(q1, g) != q2)
                throw std::logic_error("equivalence witness failed verification");
            return g;
        }
    }
    return std::nullopt;
}

BQF atkin_lehner(const BQF& q, std::int64_t p)
{
    if (pos_mod(q.a, p) != 0 || q.disc() >= 0)
        throw Error(ErrorKind::NotGamma0Form, to_string(q) + " is not a Heegner form of level " + std::to_string(p));
    return {p * q.c, -q.b, q.a / p};
}

namespace {

int stabilizer_in_gamma0(const BQF& q, std::int64_t p)
{
    auto [r, g] = reduce(q);
    const Mat2 ginv = inverse(g);
    int count = 0;
    for (const Mat2& s : automorphs(r))
        if (pos_mod((g * s * ginv).c, p) == 0)
            ++count;
    return count / 2;
}

/// b brought into (-a, a] by translations, which keep Gamma_0(p)-classes.
BQF normalize_b(const BQF& q)
{
    std::int64_t k = floor_div(q.a - q.b, 2 * q.a);
    return act(q, Mat2{1, k, 0, 1});
}

/// Every form of discriminant -d is R o g for a reduced R and g in Gamma; writing
/// g = g_i h with h in Gamma_0(p) and g_i running over coset representatives of
/// Gamma / Gamma_0(p), every Gamma_0(p)-class appears among the R o g_i.
std::vector<BQF> coset_candidates(std::int64_t d, std::int64_t p, std::int64_t beta)
{
    std::vector<Mat2> cosets{Mat2{0, -1, 1, 0}};
    for (std::int64_t k = 0; k < p; ++k)
        cosets.push_back(Mat2{1, 0, k, 1});
    std::vector<BQF> reps;
    for (const auto& w : class_list(d)) {
        for (const Mat2& g : cosets) {
            BQF q = act(w.form, g);
            if (pos_mod(q.a, p) != 0 || pos_mod(q.b - beta, 2 * p) != 0)
                continue;
            q = normalize_b(q);
            bool seen = std::any_of(reps.begin(), reps.end(),
                                    [&](const BQF& r) { return gamma0_equivalent(r, q, p).has_value(); });
            if (!seen)
                reps.push_back(q);
        }
    }
    return reps;
}

} // namespace

std::vector<ClassRep> gamma0_classes(std::int64_t d, std::int64_t p, std::int64_t beta)
{
    require_discriminant(d);
    if (pos_mod(beta * beta + d, 4 * p) != 0)
        throw Error(ErrorKind::BadBeta, "beta^2 is not congruent to -d modulo 4p");
    std::vector<BQF> reps = coset_candidates(d, p, beta);
    std::sort(reps.begin(), reps.end());

    std::vector<ClassRep> out;
    for (const BQF& q : reps) {
        ClassRep r;
        r.form = q;
        r.stab_gamma = static_cast<int>(automorphs(reduce(q).first).size()) / 2;
        r.stab_gamma0 = stabilizer_in_gamma0(q, p);
        r.stab_fricke = gamma0_equivalent(atkin_lehner(q, p), q, p) ? 2 * r.stab_gamma0 : r.stab_gamma0;
        r.heegner_re = -q.b;
        r.heegner_d = d;
        r.heegner_den = 2 * q.a;
        out.push_back(r);
    }
    return out;
}

Rational weighted_class_count(const std::vector<ClassRep>& classes)
{
    Rational h(0);
    for (const auto& r : classes)
        h += r.weight_gamma0();
    return h;
}

int genus_char(const BQF& q, std::int64_t D, std::int64_t d)
{
    if (q.disc() != -d * D)
        throw Error(ErrorKind::DiscriminantMismatch, to_string(q) + " does not have discriminant -dD");
    const std::int64_t modulus = 2 * D * d;
    auto usable = [&](std::int64_t r) { return r != 0 && std::gcd(r, modulus) == 1; };
    for (std::int64_t r : {q.a, q.c, q.a + q.b + q.c})
        if (usable(r))
            return kronecker(D, r);
    for (std::int64_t x = -40; x <= 40; ++x)
        for (std::int64_t y = 0; y <= 40; ++y)
            if (std::gcd(x, y) == 1 && usable(q(x, y)))
                return kronecker(D, q(x, y));
    throw Error(ErrorKind::NoCoprimeValue, to_string(q) + " represents no small value prime to 2Dd");
}

nlohmann::json to_json(const BQF& q)
{
    return {{"a", q.a}, {"b", q.b}, {"c", q.c}};
}

BQF form_from_json(const nlohmann::json& j)
{
    return {j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("c").get<std::int64_t>()};
}

nlohmann::json to_json(const ClassRep& r)
{
    return {{"form", to_json(r.form)},
            {"stab_gamma", r.stab_gamma},
            {"stab_gamma0", r.stab_gamma0},
            {"stab_fricke", r.stab_fricke},
            {"heegner_point", {r.heegner_re, r.heegner_d, r.heegner_den}}};
}

} // namespace heegner
