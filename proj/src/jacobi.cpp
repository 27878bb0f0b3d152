#include "heegner/jacobi.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/hauptmodul.hpp"
#include "heegner/linsolve.hpp"
#include "heegner/qseries.hpp"

namespace heegner {

ZetaPoly::ZetaPoly(Rational constant) : lo_(0), c_{std::move(constant)}
{
    normalize();
}

ZetaPoly ZetaPoly::monomial(Rational c, std::int64_t r)
{
    ZetaPoly z(std::move(c));
    if (!z.is_zero())
        z.lo_ = r;
    return z;
}

Rational ZetaPoly::at(std::int64_t r) const
{
    if (c_.empty() || r < lo_ || r > high())
        return Rational(0);
    return c_[static_cast<std::size_t>(r - lo_)];
}

void ZetaPoly::normalize()
{
    std::size_t head = 0;
    while (head < c_.size() && sgn(c_[head]) == 0)
        ++head;
    if (head == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    std::size_t tail = c_.size();
    while (sgn(c_[tail - 1]) == 0)
        --tail;
    c_ = std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(head), c_.begin() + static_cast<std::ptrdiff_t>(tail));
    lo_ += static_cast<std::int64_t>(head);
}

ZetaPoly& ZetaPoly::operator+=(const ZetaPoly& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    std::int64_t lo = std::min(lo_, o.lo_);
    std::int64_t hi = std::max(high(), o.high());
    std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < c_.size(); ++k)
        out[static_cast<std::size_t>(lo_ - lo) + k] = c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k)
        out[static_cast<std::size_t>(o.lo_ - lo) + k] += o.c_[k];
    lo_ = lo;
    c_ = std::move(out);
    normalize();
    return *this;
}

ZetaPoly& ZetaPoly::operator-=(const ZetaPoly& o)
{
    return *this += -o;
}

ZetaPoly& ZetaPoly::operator*=(const ZetaPoly& o)
{
    if (is_zero() || o.is_zero()) {
        c_.clear();
        lo_ = 0;
        return *this;
    }
    std::vector<Rational> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] += c_[i] * o.c_[j];
    }
    lo_ += o.lo_;
    c_ = std::move(out);
    normalize();
    return *this;
}

ZetaPoly& ZetaPoly::operator*=(const Rational& r)
{
    for (auto& c : c_)
        c *= r;
    normalize();
    return *this;
}

ZetaPoly ZetaPoly::operator-() const
{
    ZetaPoly z = *this;
    for (auto& c : z.c_)
        c = -c;
    return z;
}

ZetaPoly coeff_traits<ZetaPoly>::inverse(const ZetaPoly& c)
{
    if (c.coeffs().size() != 1)
        throw std::domain_error("only monomials in zeta are invertible");
    return ZetaPoly::monomial(Rational(1) / c.coeffs().front(), -c.low());
}

Rational JacobiSeries::c(std::int64_t n, std::int64_t r) const
{
    return q.at(n).at(r);
}

JacobiSeries JacobiSeries::truncated(std::int64_t rows) const
{
    return {index, weight, q.truncated(rows)};
}

JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b)
{
    if (a.index != b.index || a.weight != b.weight)
        throw std::invalid_argument("adding Jacobi series of different weight or index");
    return {a.index, a.weight, a.q + b.q};
}

JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b)
{
    return a + b * Rational(-1);
}

JacobiSeries operator*(const JacobiSeries& a, const Rational& r)
{
    return {a.index, a.weight, a.q.times(r)};
}

bool operator==(const JacobiSeries& a, const JacobiSeries& b)
{
    return a.index == b.index && a.weight == b.weight && a.q == b.q;
}

namespace {

using ZSeries = Series<ZetaPoly>;

ZSeries zseries(std::int64_t first, std::vector<ZetaPoly> rows, std::int64_t trunc)
{
    return ZSeries(1, first, std::move(rows), trunc, ZetaPoly());
}

ZSeries lift_q(const ExactSeries& f)
{
    return lift(f, ZetaPoly());
}

ZetaPoly sym(long c1, long c0)
{
    ZetaPoly z = ZetaPoly::monomial(Rational(c1), 1) + ZetaPoly::monomial(Rational(c1), -1);
    return z + ZetaPoly(Rational(c0));
}

/// Weight of g_w and its pole shift: g_w Delta^{-k0} has weight w.
struct ModularSeed {
    int e4 = 0;
    int e6 = 0;
    long k0 = 0;
};

ModularSeed seed_for_weight(long w)
{
    static const int e4_of[6] = {0, 2, 1, 0, 2, 1};
    static const int e6_of[6] = {0, 1, 0, 1, 0, 1};
    long r = pos_mod(w, 12) / 2;
    ModularSeed s{e4_of[r], e6_of[r], 0};
    long wg = 4 * s.e4 + 6 * s.e6;
    s.k0 = (wg - w) / 12;
    return s;
}

/// g_w Delta^{-k0} j^t for t = 0 .. t_max, each with rows below trunc.
std::vector<ExactSeries> modular_family(long w, long t_max, std::int64_t trunc)
{
    ModularSeed s = seed_for_weight(w);
    std::int64_t work = trunc + t_max + std::max<long>(s.k0, 0) + 4;
    ExactSeries g = exact_constant(Rational(1), work);
    for (int k = 0; k < s.e4; ++k)
        g *= eisenstein(4, work);
    for (int k = 0; k < s.e6; ++k)
        g *= eisenstein(6, work);
    ExactSeries dl = delta(work + 2 * std::abs(s.k0) + 2);
    if (s.k0 > 0)
        g *= dl.inverse().pow(Rational(s.k0));
    else if (s.k0 < 0)
        g *= dl.pow(Rational(-s.k0));
    ExactSeries j = classical_j(work);
    std::vector<ExactSeries> out;
    for (long t = 0; t <= t_max; ++t) {
        out.push_back(g.truncated(trunc));
        g *= j;
    }
    if (out.back().trunc() < trunc)
        throw std::logic_error("modular family lost too many rows");
    return out;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return -floor_div(-a, b);
}

void check_discriminant_dependence(const PhiForm& f)
{
    const JacobiSeries& s = f.base;
    const std::int64_t m = 4 * f.p;
    std::map<std::int64_t, Rational> seen;
    for (std::int64_t n = s.first_row(); n < s.trunc(); ++n) {
        std::int64_t reach = isqrt(std::max<std::int64_t>(m * n + f.D, 0)) + 2 * f.p + 1;
        for (std::int64_t r = -reach; r <= reach; ++r) {
            std::int64_t d = m * n - r * r;
            Rational v = s.c(n, r);
            auto [it, fresh] = seen.emplace(d, v);
            if (!fresh && it->second != v)
                throw Error(ErrorKind::InconsistentDiscriminantDependence,
                            "phi_{" + std::to_string(f.D) + "," + std::to_string(f.p) + "} differs at discriminant "
                                + std::to_string(d));
        }
        const ZetaPoly& row = s.q.at(n);
        if (!row.is_zero() && (row.low() < -reach || row.high() > reach))
            throw Error(ErrorKind::InconsistentDiscriminantDependence, "nonzero cell beyond the singular bound");
    }
    for (const auto& [d, v] : seen) {
        bool ok = true;
        if (d == -f.D)
            ok = v == 1;
        else if (d < 0)
            ok = v == 0;
        else if (d == 0)
            ok = v == (is_square(f.D) ? -2 : 0);
        if (!ok)
            throw Error(ErrorKind::InconsistentDiscriminantDependence,
                        "phi_{" + std::to_string(f.D) + "," + std::to_string(f.p) + "} has B(" + std::to_string(d)
                            + ") = " + to_fraction_string(v));
    }
}

} // namespace

WeakGenerators weak_generators(std::int64_t trunc)
{
    if (trunc < 1)
        throw std::invalid_argument("weak generators need at least one row");
    const std::size_t T = static_cast<std::size_t>(trunc);
    std::vector<ZetaPoly> num(T);
    num[0] = ZetaPoly(Rational(1));
    for (std::size_t n = 1; n < T; ++n) {
        for (std::int64_t sgn_r : {1, -1}) {
            ZetaPoly step = ZetaPoly::monomial(Rational(-1), sgn_r);
            for (int rep = 0; rep < 2; ++rep)
                for (std::size_t k = T; k-- > n;)
                    if (!num[k - n].is_zero())
                        num[k] += num[k - n] * step;
        }
    }
    ZSeries A = zseries(0, std::move(num), trunc) * lift_q(euler_product(trunc).pow(Rational(-4)));
    ZSeries a = A * zseries(0, {sym(1, -2)}, trunc);

    std::vector<ZetaPoly> s(T);
    for (std::size_t n = 1; n < T; ++n)
        for (std::int64_t d : divisors(static_cast<std::int64_t>(n)))
            s[n] += ZetaPoly::monomial(Rational(d), d) + ZetaPoly::monomial(Rational(d), -d) + ZetaPoly(Rational(-2 * d));
    ZSeries S = zseries(0, std::move(s), trunc);
    ZSeries b = a + A.times(Rational(12)) + (S * a).times(Rational(12));
    return {{1, -2, a.truncated(trunc)}, {1, 0, b.truncated(trunc)}};
}

PhiForm phi(long D, long p, std::int64_t trunc)
{
    if (p < 1 || p > 3)
        throw Error(ErrorKind::UnsupportedPrime, "phi_{D,p} is built for p in {1, 2, 3}, got " + std::to_string(p));
    if (D < 1 || !is_square_mod(D, 4 * p))
        throw Error(ErrorKind::BadD, std::to_string(D) + " is not a positive square modulo " + std::to_string(4 * p));
    if (trunc < 1)
        throw std::invalid_argument("phi needs at least one row");
    const long m = 4 * p;
    const long E = static_cast<long>(ceil_div(D + m, m)) + 1;

    // Unknowns: g_w Delta^{-k0} j^t a^i b^{p-i}, pole order k0 + t <= E.
    struct Block {
        long i;
        std::vector<ExactSeries> family_short;
    };
    WeakGenerators gen = weak_generators(trunc + E + 2);
    std::vector<ZSeries> jac;
    for (long i = 0; i <= p; ++i) {
        ZSeries prod = zseries(0, {ZetaPoly(Rational(1))}, trunc + E + 2);
        for (long k = 0; k < i; ++k)
            prod = prod * gen.a.q;
        for (long k = i; k < p; ++k)
            prod = prod * gen.b.q;
        jac.push_back(std::move(prod));
    }
    std::vector<Block> blocks;
    std::vector<std::pair<long, long>> unknowns; // (i, t)
    for (long i = 0; i <= p; ++i) {
        ModularSeed s = seed_for_weight(2 + 2 * i);
        long t_max = E - s.k0;
        if (t_max < 0)
            continue;
        blocks.push_back({i, modular_family(2 + 2 * i, t_max, 1)});
        for (long t = 0; t <= t_max; ++t)
            unknowns.emplace_back(i, t);
    }

    // Singular cells with |r| <= p represent every class of (discriminant, r mod 2p).
    std::vector<std::pair<long, long>> cells;
    for (long n = -E; n <= 0; ++n)
        for (long r = -p; r <= p; ++r)
            if (m * n - r * r < 0)
                cells.emplace_back(n, r);
    LinearSystem sys;
    std::vector<std::vector<Rational>> columns;
    for (const Block& blk : blocks)
        for (const ExactSeries& f : blk.family_short) {
            ZSeries prod = (lift_q(f) * jac[static_cast<std::size_t>(blk.i)]).truncated(1);
            std::vector<Rational> col;
            for (auto [n, r] : cells)
                col.push_back(n < prod.trunc() ? prod.at(n).at(r) : Rational(0));
            columns.push_back(std::move(col));
        }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        std::vector<Rational> row;
        for (const auto& col : columns)
            row.push_back(col[c]);
        long d = m * cells[c].first - cells[c].second * cells[c].second;
        sys.add_row(std::move(row), Rational(d == -D ? 1 : 0));
    }
    std::vector<Rational> x = solve_exact(sys, unknowns.size());

    ZSeries total = zseries(0, {}, trunc);
    std::size_t k = 0;
    for (const Block& blk : blocks) {
        std::vector<ExactSeries> fam = modular_family(2 + 2 * blk.i, static_cast<long>(blk.family_short.size()) - 1, trunc);
        ExactSeries F = exact_zero(1, trunc);
        for (const ExactSeries& f : fam) {
            if (sgn(x[k]) != 0)
                F += f.times(x[k]);
            ++k;
        }
        if (!F.is_zero())
            total += (lift_q(F) * jac[static_cast<std::size_t>(blk.i)]).truncated(trunc);
    }
    PhiForm out{D, p, {p, 2, total.truncated(trunc)}};
    if (out.base.trunc() < trunc)
        throw std::logic_error("phi lost rows in construction");
    check_discriminant_dependence(out);
    return out;
}

Rational discriminant_coefficient(const JacobiSeries& f, long d)
{
    const std::int64_t m = 4 * f.index;
    std::optional<Rational> found;
    for (std::int64_t n = std::min<std::int64_t>(f.first_row(), floor_div(d, m)); n < f.trunc(); ++n) {
        std::int64_t sq = m * n - d;
        if (sq < 0 || !is_square(sq))
            continue;
        std::int64_t r = isqrt(sq);
        Rational v = n < f.first_row() ? Rational(0) : f.c(n, r);
        if (found && *found != v)
            throw Error(ErrorKind::InconsistentDiscriminantDependence,
                        "cells with discriminant " + std::to_string(d) + " disagree");
        found = v;
    }
    if (!found)
        throw Error(ErrorKind::WindowMiss, "no stored cell has discriminant " + std::to_string(d));
    return *found;
}

Rational coefficient_B(const PhiForm& f, long d)
{
    return discriminant_coefficient(f.base, d);
}

Rational B_star(const PhiForm& f, long d)
{
    return coefficient_B(f, d) * two_pow_s(f.D, f.p);
}

JacobiSeries hecke_V(const JacobiSeries& f, long p)
{
    if (f.index != 1)
        throw std::invalid_argument("V_p is applied to index-1 series here");
    if (p < 1)
        throw std::invalid_argument("V_p needs p >= 1");
    const std::int64_t first = f.first_row();
    const std::int64_t start = std::min(first * p, floor_div(first, p));
    const std::int64_t stop = ceil_div(f.trunc(), p);
    Rational factor = 1;
    for (int k = 0; k < f.weight - 1; ++k)
        factor *= p;
    for (int k = 0; k > f.weight - 1; --k)
        factor /= p;
    std::vector<ZetaPoly> rows;
    for (std::int64_t n = start; n < stop; ++n) {
        ZetaPoly row = n * p >= first ? f.q.at(n * p) : ZetaPoly();
        if (pos_mod(n, p) == 0 && n / p >= first) {
            const ZetaPoly& src = f.q.at(n / p);
            for (std::int64_t r = src.is_zero() ? 1 : src.low(); !src.is_zero() && r <= src.high(); ++r)
                if (sgn(src.at(r)) != 0)
                    row += ZetaPoly::monomial(src.at(r) * factor, r * p);
        }
        rows.push_back(std::move(row));
    }
    return {p * f.index, f.weight, zseries(start, std::move(rows), stop)};
}

JacobiSeries hecke_T(const PhiForm& f, long l)
{
    if (l < 1 || std::gcd(l, f.p) != 1)
        throw Error(ErrorKind::BadL, "T_l needs l >= 1 prime to p = " + std::to_string(f.p));
    JacobiSeries acc{f.p, 2, zseries(0, {}, f.base.trunc())};
    for (std::int64_t nu : divisors(l)) {
        int chi = kronecker(f.D, l / nu);
        if (chi == 0)
            continue;
        PhiForm g = nu == 1 ? f : phi(static_cast<long>(nu * nu * f.D), f.p, f.base.trunc());
        acc = acc + g.base * Rational(chi * nu);
    }
    return acc;
}

Rational pairing(const HalfIntForm& f, const PhiForm& g)
{
    if (f.p != g.p)
        throw std::invalid_argument("pairing needs forms of the same level");
    Rational acc = 0;
    for (long n = -f.d; n <= g.D; ++n) {
        if (n >= f.series.trunc())
            throw Error(ErrorKind::WindowMiss, "half-integral form is too short for the pairing");
        Rational a = f.series.coeff(n);
        if (sgn(a) != 0)
            acc += a * coefficient_B(g, -n);
    }
    return acc;
}

nlohmann::json to_json(const JacobiSeries& f)
{
    nlohmann::json cells = nlohmann::json::array();
    for (std::int64_t n = f.first_row(); n < f.trunc(); ++n) {
        const ZetaPoly& row = f.q.at(n);
        for (std::int64_t r = row.is_zero() ? 1 : row.low(); !row.is_zero() && r <= row.high(); ++r)
            if (sgn(row.at(r)) != 0)
                cells.push_back({n, r, to_fraction_string(row.at(r))});
    }
    return {{"index", f.index}, {"weight", f.weight}, {"trunc", f.trunc()}, {"cells", cells}};
}

JacobiSeries jacobi_from_json(const nlohmann::json& j)
{
    std::int64_t trunc = j.at("trunc").get<std::int64_t>();
    std::map<std::int64_t, ZetaPoly> rows;
    std::int64_t first = trunc;
    for (const auto& cell : j.at("cells")) {
        std::int64_t n = cell.at(0).get<std::int64_t>();
        rows[n] += ZetaPoly::monomial(parse_fraction(cell.at(2).get<std::string>()), cell.at(1).get<std::int64_t>());
        first = std::min(first, n);
    }
    std::vector<ZetaPoly> dense(static_cast<std::size_t>(std::max<std::int64_t>(trunc - first, 0)));
    for (auto& [n, row] : rows)
        if (n < trunc)
            dense[static_cast<std::size_t>(n - first)] = std::move(row);
    return {j.at("index").get<long>(), j.at("weight").get<int>(), zseries(first, std::move(dense), trunc)};
}

} // namespace heegner
