#include "heegner/qseries.hpp"

#include <array>
#include <numeric>

namespace heegner {

ExactSeries exact_zero(std::int64_t scale, std::int64_t trunc)
{
    return ExactSeries(scale, trunc * scale, Rational(0));
}

ExactSeries exact_constant(const Rational& c, std::int64_t trunc)
{
    return ExactSeries::monomial(c, 0, 1, trunc);
}

ExactSeries exact_from(std::int64_t first, const std::vector<Rational>& coeffs, std::int64_t trunc)
{
    return ExactSeries(1, first, coeffs, trunc, Rational(0));
}

ExactSeries theta(std::int64_t trunc)
{
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(trunc, 0)));
    for (std::int64_t n = 0; n * n < trunc; ++n)
        c[static_cast<std::size_t>(n * n)] = n == 0 ? 1 : 2;
    return exact_from(0, c, trunc);
}

namespace {

struct BernoulliTable {
    static constexpr int k_max = 120;
    std::array<Rational, k_max + 1> b;

    BernoulliTable()
    {
        b[0] = 1;
        for (int m = 1; m <= k_max; ++m) {
            Rational acc(0);
            Integer binom = 1; // C(m+1, j)
            for (int j = 0; j < m; ++j) {
                acc += Rational(binom) * b[static_cast<std::size_t>(j)];
                binom = binom * (m + 1 - j) / (j + 1);
            }
            b[static_cast<std::size_t>(m)] = -acc / (m + 1);
        }
        if (b[2] != Rational(1, 6) || b[4] != Rational(-1, 30))
            throw std::logic_error("Bernoulli table self-check failed");
    }
};

const BernoulliTable& bernoulli_table()
{
    static const BernoulliTable table;
    return table;
}

} // namespace

Rational bernoulli(int k)
{
    if (k < 0 || k > BernoulliTable::k_max)
        throw Error(ErrorKind::UnsupportedWeight, "Bernoulli index " + std::to_string(k) + " outside table");
    return bernoulli_table().b[static_cast<std::size_t>(k)];
}

ExactSeries eisenstein(int k, std::int64_t trunc)
{
    if (k < 4 || k % 2 != 0)
        throw Error(ErrorKind::UnsupportedWeight, "Eisenstein series needs even k >= 4, got " + std::to_string(k));
    const Rational factor = Rational(-2 * k) / bernoulli(k);
    const std::size_t n = static_cast<std::size_t>(std::max<std::int64_t>(trunc, 0));
    std::vector<Integer> sigma(n, 0);
    for (std::size_t d = 1; d < n; ++d) {
        Integer dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, static_cast<unsigned long>(k - 1));
        for (std::size_t m = d; m < n; m += d)
            sigma[m] += dk;
    }
    std::vector<Rational> c(n);
    if (n > 0)
        c[0] = 1;
    for (std::size_t m = 1; m < n; ++m)
        c[m] = factor * Rational(sigma[m]);
    return exact_from(0, c, trunc);
}

ExactSeries euler_product(std::int64_t trunc)
{
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(trunc, 0)));
    // Pentagonal numbers k(3k-1)/2 for k = 0, ±1, ±2, ...
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k}) {
            std::int64_t e = kk * (3 * kk - 1) / 2;
            if (e < trunc) {
                c[static_cast<std::size_t>(e)] = (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any)
            break;
    }
    return exact_from(0, c, trunc);
}

ExactSeries delta(std::int64_t trunc)
{
    ExactSeries p = euler_product(std::max<std::int64_t>(trunc - 1, 1)).pow(Rational(24));
    return p.shifted(1).truncated(trunc);
}

ExactSeries eta_quotient(std::int64_t p, std::int64_t e, std::int64_t trunc)
{
    if (p < 1)
        throw std::invalid_argument("eta quotient level must be positive");
    std::int64_t num = e * (1 - p);
    std::int64_t g = std::gcd(num, std::int64_t{24});
    std::int64_t scale = 24 / (g == 0 ? 24 : g);
    std::int64_t shift = num / (g == 0 ? 24 : g); // exponent = shift / scale
    // The product part must be known up to exponent trunc - shift/scale.
    std::int64_t need = trunc - floor_div(shift, scale) + 1;
    ExactSeries eta = euler_product(need);
    ExactSeries body = eta.pow(Rational(e)) * eta.dilate(p).pow(Rational(-e));
    return body.rescaled(scale).shifted(shift).truncated(trunc * scale);
}

ExactSeries rankin_cohen(const ExactSeries& f, const Rational& k, const ExactSeries& g, const Rational& l, int n)
{
    if (n < 0)
        throw std::invalid_argument("Rankin-Cohen order must be nonnegative");
    std::int64_t s = std::lcm(f.scale(), g.scale());
    std::int64_t t = std::min(f.rescaled(s).trunc() + g.rescaled(s).valuation(), g.rescaled(s).trunc() + f.rescaled(s).valuation());
    ExactSeries acc(s, t, Rational(0));
    for (int r = 0; r <= n; ++r) {
        int sd = n - r;
        Rational c = binomial(Rational(n) + k - 1, sd) * binomial(Rational(n) + l - 1, r);
        if (r % 2 == 1)
            c = -c;
        if (sgn(c) == 0)
            continue;
        acc += (f.d_operator(r) * g.d_operator(sd)).times(c);
    }
    return acc;
}

nlohmann::json to_json(const ExactSeries& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coeffs())
        coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
    return {{"scale", f.scale()}, {"valuation", f.valuation()}, {"trunc", f.trunc()}, {"coeffs", coeffs}};
}

ExactSeries series_from_json(const nlohmann::json& j)
{
    std::vector<Rational> coeffs;
    for (const auto& pair : j.at("coeffs")) {
        Rational c(Integer(pair.at(0).get<std::string>()), Integer(pair.at(1).get<std::string>()));
        c.canonicalize();
        coeffs.push_back(c);
    }
    return ExactSeries(j.at("scale").get<std::int64_t>(), j.at("valuation").get<std::int64_t>(), std::move(coeffs),
                       j.at("trunc").get<std::int64_t>(), Rational(0));
}

} // namespace heegner
