#include "heegner/cli.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "heegner/arith.hpp"
#include "heegner/errors.hpp"
#include "heegner/halfint.hpp"
#include "heegner/hauptmodul.hpp"
#include "heegner/jacobi.hpp"
#include "heegner/quadforms.hpp"
#include "heegner/traces.hpp"

namespace heegner::cli {

namespace {

using Row = std::vector<std::string>;

struct Report {
    nlohmann::json json;
    Row columns;
    std::vector<Row> rows;
    bool pass = true;
};

struct Args {
    long p = 0;
    long d = 0;
    long D = 0;
    long m = 1;
    long dmax = 0;
    std::optional<long> beta;
    std::optional<std::int64_t> qtrunc;
    std::optional<std::int64_t> trunc;
    std::string tau = "3i";
    std::string format = "json";
    bool json = false;
    RunConfig config;
};

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const Report& r, Format format, std::ostream& out)
{
    if (format == Format::Json) {
        out << r.json.dump(2) << '\n';
        return;
    }
    if (format == Format::Csv) {
        auto line = [&](const Row& row) {
            for (std::size_t k = 0; k < row.size(); ++k)
                out << (k ? "," : "") << csv_field(row[k]);
            out << '\n';
        };
        line(r.columns);
        for (const auto& row : r.rows)
            line(row);
        return;
    }
    std::vector<std::size_t> width(r.columns.size());
    for (std::size_t k = 0; k < r.columns.size(); ++k)
        width[k] = r.columns[k].size();
    for (const auto& row : r.rows)
        for (std::size_t k = 0; k < row.size() && k < width.size(); ++k)
            width[k] = std::max(width[k], row[k].size());
    auto line = [&](const Row& row) {
        std::string s;
        for (std::size_t k = 0; k < row.size(); ++k) {
            s += row[k];
            if (k + 1 < row.size())
                s += std::string(width[k] - row[k].size() + 2, ' ');
        }
        out << s << '\n';
    };
    line(r.columns);
    for (const auto& row : r.rows)
        line(row);
}

std::string num(const BigReal& x)
{
    return x.to_string(30);
}

std::string str(long x)
{
    return std::to_string(x);
}

TraceOptions trace_options(const Args& a)
{
    TraceOptions opt;
    opt.bits = a.config.bits;
    opt.beta = a.beta;
    if (a.config.tolerance)
        opt.tolerance = BigReal::from_string(*a.config.tolerance, a.config.bits);
    return opt;
}

// Work-stealing over independent tasks; results land in their own slot so order is fixed.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;)
                f(i);
        });
    for (auto& t : pool)
        t.join();
}

Report series_report(const std::string& kind, nlohmann::json inputs, const ExactSeries& s)
{
    Report r;
    r.json = {{"kind", kind}, {"inputs", std::move(inputs)}, {"series", to_json(s)}};
    r.columns = {"exponent", "coefficient"};
    for (std::int64_t n = s.valuation(); n < s.trunc(); ++n)
        r.rows.push_back({str(n), s.coeff(n).get_str()});
    return r;
}

Report cmd_qexp(const Args& a)
{
    std::int64_t trunc = a.trunc.value_or(a.config.qtrunc);
    HauptmodulSeries h = qexp(a.p, trunc);
    return series_report("qexp", {{"p", a.p}, {"trunc", trunc}}, h.series);
}

long default_beta(long p, long d)
{
    for (long b = 0; b < 2 * p; ++b)
        if (pos_mod(static_cast<std::int64_t>(b) * b + d, 4 * p) == 0)
            return b;
    throw Error(ErrorKind::NotAdmissible, "-" + str(d) + " is not a square modulo " + str(4 * p));
}

Report cmd_classes(const Args& a)
{
    long beta = a.beta ? *a.beta : default_beta(a.p, a.d);
    auto cls = gamma0_classes(a.d, a.p, beta);
    Report r;
    nlohmann::json list = nlohmann::json::array();
    r.columns = {"a", "b", "c", "stab_gamma0", "weight"};
    for (const auto& c : cls) {
        list.push_back(to_json(c));
        r.rows.push_back({str(c.form.a), str(c.form.b), str(c.form.c), str(c.stab_gamma0), c.weight_gamma0().get_str()});
    }
    r.json = {{"kind", "classes"},
              {"inputs", {{"d", a.d}, {"p", a.p}, {"beta", beta}}},
              {"classes", list},
              {"weighted_count", weighted_class_count(cls).get_str()}};
    return r;
}

Report cmd_basis(const Args& a)
{
    std::int64_t qtrunc = a.qtrunc.value_or(a.config.qtrunc);
    if (qtrunc < 20)
        throw std::invalid_argument("--qtrunc must be at least 20");
    auto forms = basis(a.p, a.dmax, qtrunc);
    Report r;
    nlohmann::json list = nlohmann::json::array();
    r.columns = {"d", "exponent", "coefficient"};
    for (const auto& f : forms) {
        list.push_back({{"d", f.d}, {"label", f.label}, {"series", to_json(f.series)}});
        for (std::int64_t n = f.series.valuation(); n < f.series.trunc(); ++n) {
            Rational c = f.series.coeff(n);
            if (sgn(c) != 0)
                r.rows.push_back({str(f.d), str(n), c.get_str()});
        }
    }
    r.json = {{"kind", "basis"}, {"inputs", {{"p", a.p}, {"dmax", a.dmax}, {"qtrunc", qtrunc}}}, {"forms", list}};
    return r;
}

Report cmd_phi(const Args& a)
{
    std::int64_t rows = a.trunc.value_or(default_phi_rows);
    PhiForm g = phi(a.D, a.p, rows);
    Report r;
    r.json = {{"kind", "phi"}, {"inputs", {{"D", a.D}, {"p", a.p}, {"trunc", rows}}}, {"form", to_json(g.base)}};
    r.columns = {"n", "r", "coefficient"};
    for (std::int64_t n = g.base.first_row(); n < g.base.trunc(); ++n) {
        ZetaPoly row = g.base.q.coeff(n);
        if (row.is_zero())
            continue;
        for (std::int64_t k = row.low(); k <= row.high(); ++k)
            if (sgn(row.at(k)) != 0)
                r.rows.push_back({str(n), str(k), row.at(k).get_str()});
    }
    return r;
}

Report trace_report(const TraceReport& t)
{
    Report r;
    r.json = to_json(t);
    r.columns = {"kind", "p", "D", "d", "m", "beta", "classes", "numeric_re", "numeric_im", "recognized", "crosscheck",
                 "residual", "status"};
    r.rows.push_back({t.kind, str(t.p), str(t.D), str(t.d), str(t.m), str(t.beta), std::to_string(t.classes),
                      num(t.numeric.real()), num(t.numeric.imag()), t.recognized.get_str(),
                      t.crosscheck ? t.crosscheck->get_str() : "", t.residual.to_string(6), t.status});
    r.pass = t.status == "ok";
    return r;
}

Report product_report(const ProductReport& p)
{
    Report r;
    r.json = to_json(p);
    r.columns = {"kind", "p", "D", "d", "beta", "k", "exponent", "exact", "numeric_re", "numeric_im"};
    for (std::size_t k = 0; k < p.exact.size(); ++k)
        r.rows.push_back({p.kind, str(p.p), str(p.D), str(p.d), str(p.beta), std::to_string(k + 1),
                          p.exponents[k].get_str(), p.exact[k].get_str(), num(p.numeric[k].real()),
                          num(p.numeric[k].imag())});
    r.pass = p.status == "ok";
    return r;
}

Report cmd_transformations(const Args& a)
{
    unsigned bits = a.config.bits;
    BigComplex tau = parse_complex(a.tau, bits);
    TransformationReport t = check_transformations(a.p, a.d, tau, bits);
    BigReal limit = a.config.tolerance ? BigReal::from_string(*a.config.tolerance, bits)
                                       : (bits >= 128 ? pow10(-30, bits) : pow2(-static_cast<long>(bits) / 2, bits));
    Report r;
    nlohmann::json checks = nlohmann::json::array();
    r.columns = {"p", "d", "terms", "check", "residual"};
    for (const auto& c : t.checks) {
        checks.push_back({{"name", c.name}, {"residual", c.residual.to_string(6)}});
        r.rows.push_back({str(t.p), str(t.d), std::to_string(t.terms), c.name, c.residual.to_string(6)});
    }
    r.pass = t.max_residual < limit;
    r.json = {{"kind", "transformations"},
              {"inputs", {{"p", a.p}, {"d", a.d}, {"tau", a.tau}, {"bits", bits}}},
              {"terms", t.terms},
              {"checks", checks},
              {"residual", t.max_residual.to_string(6)},
              {"status", r.pass ? "ok" : "residual-breach"}};
    return r;
}

// Reference examples rerun by reproduce-paper. p = 0 marks level-independent items.
struct ReferenceItem {
    long p;
    std::string name;
    std::string expected;
    std::function<std::string()> observe;
};

std::string joined(const std::vector<Rational>& v)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : " ") + x.get_str();
    return s;
}

std::string joined(std::initializer_list<long> v)
{
    std::vector<Rational> r(v.begin(), v.end());
    return joined(r);
}

std::string coeffs_at(long p, long d, std::int64_t qtrunc, std::initializer_list<long> exps)
{
    HalfIntForm f = basis_form(p, d, qtrunc);
    std::vector<Rational> out;
    for (long n : exps)
        out.push_back(f.series.coeff(n));
    return joined(out);
}

using Expected = std::vector<std::pair<BQF, int>>;

std::string class_set(const Expected& e)
{
    std::string s;
    for (const auto& [q, stab] : e)
        s += (s.empty() ? "" : " ") + to_string(q) + ":" + str(stab);
    return s;
}

// Each expected form is reported with the stabilizer of the class it falls in.
std::string match_classes(long d, long p, long beta, const Expected& e)
{
    auto cls = gamma0_classes(d, p, beta);
    std::string s;
    for (const auto& [q, stab] : e) {
        std::string found = "missing";
        for (const auto& c : cls)
            if (gamma0_equivalent(c.form, q, p))
                found = str(c.stab_gamma0);
        s += (s.empty() ? "" : " ") + to_string(q) + ":" + found;
    }
    if (cls.size() != e.size())
        s += " (" + std::to_string(cls.size()) + " classes)";
    return s;
}

std::vector<ReferenceItem> reference_items(const Args& a)
{
    const unsigned bits = a.config.bits;
    auto twisted = [a](long p, long D, long d) {
        return [a, p, D, d] { return twisted_trace(p, D, d, trace_options(a)).recognized.get_str(); };
    };
    const Expected c16{{{4, -4, 2}, 2}, {{2, 0, 2}, 1}, {{4, 0, 1}, 1}};
    const Expected c39{{{12, 3, 1}, 1}, {{3, 3, 4}, 1}, {{6, 3, 2}, 1}, {{15, 9, 2}, 1}};
    std::vector<ReferenceItem> items{
        {0, "theta to q^10", "1 2 0 0 2 0 0 0 0 2",
         [] {
             ExactSeries t = theta(10);
             std::vector<Rational> v;
             for (int n = 0; n < 10; ++n)
                 v.push_back(t.coeff(n));
             return joined(v);
         }},
        {2, "f_{4,2} at q^{1,4,8,9,12,16,17,20}", joined({-52, 272, 2600, -8244, 15300, 71552, -204800, 282880}),
         [] { return coeffs_at(2, 4, 40, {1, 4, 8, 9, 12, 16, 17, 20}); }},
        {2, "f_{7,2} at q^{1,4,8,9,12,16,17,20}", joined({-23, -2048, 45056, 252, -516096, 4145152, -1771, -26378240}),
         [] { return coeffs_at(2, 7, 40, {1, 4, 8, 9, 12, 16, 17, 20}); }},
        {2, "Gamma0(2) classes of discriminant -16, beta 0", class_set(c16),
         [c16] { return match_classes(16, 2, 0, c16); }},
        {2, "[4,-4,2] vs [2,0,2] under Gamma0(2)", "distinct",
         [] { return gamma0_equivalent({4, -4, 2}, {2, 0, 2}, 2) ? "equivalent" : "distinct"; }},
        {2, "W_2 on [4,-4,2] and [2,0,2]", "[4,-4,2] [4,0,1]",
         [] {
             std::string s;
             for (BQF q : {BQF{4, -4, 2}, BQF{2, 0, 2}}) {
                 BQF w = atkin_lehner(q, 2);
                 for (BQF c : {BQF{4, -4, 2}, BQF{2, 0, 2}, BQF{4, 0, 1}})
                     if (gamma0_equivalent(w, c, 2))
                         s += (s.empty() ? "" : " ") + to_string(c);
             }
             return s;
         }},
        {2, "chi_{17,-4} on [18,2,1] and [6,-2,3]", "1 -1",
         [] { return str(genus_char({18, 2, 1}, 17, 4)) + " " + str(genus_char({6, -2, 3}, 17, 4)); }},
        {2, "A(17,4) and A*(8,7)", "-204800 90112",
         [] {
             return coefficient_A(basis_form(2, 4, 40), 17).get_str() + " " + A_star(basis_form(2, 7, 40), 8).get_str();
         }},
        {2, "B(4,0) and B(17,4)", "-2 204800",
         [] { return coefficient_B(phi(4, 2), 0).get_str() + " " + coefficient_B(phi(17, 2), 4).get_str(); }},
        {2, "V_2 singular part at discriminants -4, -1", "2 1",
         [] {
             JacobiSeries v = hecke_V(phi(1, 1, 24).base, 2);
             return discriminant_coefficient(v, -4).get_str() + " " + discriminant_coefficient(v, -1).get_str();
         }},
        {2, "V_2 lemma for D = 1 on rows n <= 10", "holds",
         [] {
             JacobiSeries lhs = hecke_V(phi(1, 1, 22).base, 2).truncated(11);
             JacobiSeries rhs = (phi(4, 2, 11).base * Rational(2) + phi(1, 2, 11).base).truncated(11);
             return lhs == rhs ? "holds" : "fails";
         }},
        {2, "t(-1), t(0), t^(2)(4)", "-1 2 -52",
         [a] {
             auto o = trace_options(a);
             return trace(2, -1, o).recognized.get_str() + " " + trace(2, 0, o).recognized.get_str() + " " +
                    trace(2, 4, o).recognized.get_str();
         }},
        {2, "j_2^* constant term", "0", [] { return qexp(2, 10).series.coeff(0).get_str(); }},
        {2, "twisted trace (2,17,4) / sqrt(17)", "-204800", twisted(2, 17, 4)},
        {2, "twisted trace (2,8,7) / sqrt(8)", "90112", twisted(2, 8, 7)},
        {2, "twisted product (2,8,7) first exponent", "90112",
         [bits] { return verify_twisted_product(2, 8, 7, bits, 1).exponents[0].get_str(); }},
        {3, "f_{3,3} at q^{1,4,9,12,13,16,21}", joined({-14, 40, -78, 168, -378, 688, -897}),
         [] { return coeffs_at(3, 3, 40, {1, 4, 9, 12, 13, 16, 21}); }},
        {3, "f_{8,3} at q^{1,4,9,12,13,16,21}", joined({-34, -188, 2430, 8262, -11968, -34936, 171072}),
         [] { return coeffs_at(3, 8, 40, {1, 4, 9, 12, 13, 16, 21}); }},
        {3, "f_{11,3} at q^{1,4,9,12,13,16,21}", joined({22, -552, -11178, 48600, 76175, -269744, -1782891}),
         [] { return coeffs_at(3, 11, 40, {1, 4, 9, 12, 13, 16, 21}); }},
        {3, "f_{3,3} at q^{52,117}", joined({133056, -30650256}), [] { return coeffs_at(3, 3, 140, {52, 117}); }},
        {3, "Gamma0(3) classes of discriminant -39, b = 3 mod 6", class_set(c39),
         [c39] { return match_classes(39, 3, 3, c39); }},
        {3, "B(1,3) and B(13,8)", "14 11968",
         [] { return coefficient_B(phi(1, 3), 3).get_str() + " " + coefficient_B(phi(13, 3), 8).get_str(); }},
        {3, "t^(3)(3)", "-14", [a] { return trace(3, 3, trace_options(a)).recognized.get_str(); }},
        {3, "j_3^* constant term", "0", [] { return qexp(3, 10).series.coeff(0).get_str(); }},
        {3, "twisted trace (3,13,3) / sqrt(13)", "-378", twisted(3, 13, 3)},
        {3, "twisted trace (3,13,8) / sqrt(13)", "-11968", twisted(3, 13, 8)},
        {3, "twisted trace (3,21,8) / sqrt(21)", "342144", twisted(3, 21, 8)},
        {3, "twisted product (3,13,3) exponents", joined({-378, 133056, -61300512}),
         [bits] { return joined(verify_twisted_product(3, 13, 3, bits, 3).exponents); }},
    };
    if (a.p != 0)
        std::erase_if(items, [&](const ReferenceItem& i) { return i.p != 0 && i.p != a.p; });
    return items;
}

Report cmd_reproduce(const Args& a)
{
    if (a.p != 0 && a.p != 2 && a.p != 3)
        throw Error(ErrorKind::UnsupportedPrime, "reference examples exist for p = 2 and p = 3");
    auto items = reference_items(a);
    std::vector<std::string> observed(items.size());
    parallel_for(items.size(), a.config.jobs, [&](std::size_t i) {
        try {
            observed[i] = items[i].observe();
        } catch (const std::exception& e) {
            observed[i] = std::string("error: ") + e.what();
        }
    });
    Report r;
    r.columns = {"p", "item", "expected", "observed", "status"};
    nlohmann::json list = nlohmann::json::array();
    int failed = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        bool ok = observed[i] == items[i].expected;
        failed += ok ? 0 : 1;
        std::string status = ok ? "pass" : "fail";
        r.rows.push_back({str(items[i].p), items[i].name, items[i].expected, observed[i], status});
        list.push_back({{"p", items[i].p},
                        {"item", items[i].name},
                        {"expected", items[i].expected},
                        {"observed", observed[i]},
                        {"status", status}});
    }
    r.pass = failed == 0;
    r.json = {{"kind", "reproduce-paper"},
              {"inputs", {{"p", a.p}}},
              {"items", list},
              {"passed", static_cast<long>(items.size()) - failed},
              {"failed", failed},
              {"status", r.pass ? "ok" : "failed"}};
    return r;
}

Format parse_format(const std::string& s)
{
    static const std::map<std::string, Format> names{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};
    return names.at(s);
}

void common_flags(CLI::App* c, Args& a)
{
    c->add_option("--bits", a.config.bits, "Working precision in bits")->check(CLI::Range(64u, 1u << 20));
    c->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_flag("--json", a.json, "Same as --format json");
    c->add_option("--jobs", a.config.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    c->add_option("--tolerance", a.config.tolerance, "Recognition or residual tolerance, e.g. 1e-20");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Args a;
    std::function<Report()> action;
    CLI::App app{"Traces of singular moduli on Gamma_0(p)^*, with the exact and Jacobi-form sides", "heegner"};
    app.require_subcommand(1);

    auto with = [&](CLI::App* c, Report (*f)(const Args&)) {
        common_flags(c, a);
        c->callback([&action, &a, f] { action = [&a, f] { return f(a); }; });
        return c;
    };
    auto p_opt = [&](CLI::App* c) { c->add_option("--p", a.p, "Prime level")->required(); };
    auto d_opt = [&](CLI::App* c) { c->add_option("--d", a.d, "Negative discriminant -d, given as d > 0")->required(); };
    auto D_opt = [&](CLI::App* c) { c->add_option("--D", a.D, "Positive discriminant D")->required(); };
    auto beta_opt = [&](CLI::App* c) { c->add_option("--beta", a.beta, "Residue class of b modulo 2p"); };

    auto qexp_cmd = [&](CLI::App* c) {
        p_opt(c);
        c->add_option("--trunc", a.trunc, "Exponents below this are exact")->check(CLI::PositiveNumber);
        with(c, cmd_qexp);
    };
    auto basis_cmd = [&](CLI::App* c) {
        p_opt(c);
        c->add_option("--dmax", a.dmax, "Largest d in the basis")->required();
        c->add_option("--qtrunc", a.qtrunc, "Largest exact exponent (>= 20)");
        with(c, cmd_basis);
    };
    auto check_cmd = [&](CLI::App* c) {
        p_opt(c);
        d_opt(c);
        c->add_option("--tau", a.tau, "Base point, e.g. 3i or 0.1+0.8i");
        with(c, cmd_transformations);
    };

    qexp_cmd(app.add_subcommand("qexp", "q-expansion of the Hauptmodul j_p^*"));
    auto* hm = app.add_subcommand("hauptmodul", "Hauptmodul operations");
    hm->require_subcommand(1);
    qexp_cmd(hm->add_subcommand("qexp", "q-expansion of the Hauptmodul j_p^*"));

    auto* classes = app.add_subcommand("classes", "Gamma_0(p) classes of Q_{d,p,beta}");
    d_opt(classes);
    p_opt(classes);
    beta_opt(classes);
    with(classes, cmd_classes);

    basis_cmd(app.add_subcommand("basis", "Half-integral weight basis f_{d,p}"));
    auto* hi = app.add_subcommand("halfint", "Half-integral weight operations");
    hi->require_subcommand(1);
    basis_cmd(hi->add_subcommand("basis", "Half-integral weight basis f_{d,p}"));
    check_cmd(hi->add_subcommand("check", "Transformation identities of f_{d,p}"));

    auto* phi_cmd = app.add_subcommand("phi", "Jacobi form phi_{D,p}");
    D_opt(phi_cmd);
    p_opt(phi_cmd);
    phi_cmd->add_option("--trunc", a.trunc, "Rows n below this are exact")->check(CLI::PositiveNumber);
    with(phi_cmd, cmd_phi);

    auto* tr = app.add_subcommand("trace", "Trace t^(p)(d) of singular moduli");
    p_opt(tr);
    tr->add_option("--d", a.d, "Discriminant -d, given as d")->required();
    beta_opt(tr);
    with(tr, [](const Args& x) { return trace_report(trace(x.p, x.d, trace_options(x))); });

    auto* tw = app.add_subcommand("twisted-trace", "Twisted trace over sqrt(D)");
    p_opt(tw);
    D_opt(tw);
    d_opt(tw);
    beta_opt(tw);
    with(tw, [](const Args& x) { return trace_report(twisted_trace(x.p, x.D, x.d, trace_options(x))); });

    auto* ft = app.add_subcommand("faber-trace", "Twisted trace of the Faber polynomial t_m");
    p_opt(ft);
    D_opt(ft);
    d_opt(ft);
    beta_opt(ft);
    ft->add_option("--m", a.m, "Faber index")->check(CLI::PositiveNumber);
    with(ft, [](const Args& x) { return trace_report(twisted_faber_trace(x.p, x.D, x.d, x.m, trace_options(x))); });

    auto* verify = app.add_subcommand("verify", "Numeric verification of product and transformation identities");
    verify->require_subcommand(1);
    auto* prod = verify->add_subcommand("product", "Borcherds product in log form");
    p_opt(prod);
    d_opt(prod);
    beta_opt(prod);
    prod->add_option("--qtrunc", a.qtrunc, "Compare q^1 .. q^qtrunc (default 15)")->check(CLI::PositiveNumber);
    with(prod, [](const Args& x) {
        return product_report(verify_borcherds_product(x.p, x.d, x.beta, x.config.bits, x.qtrunc.value_or(15)));
    });
    auto* tprod = verify->add_subcommand("twisted-product", "Twisted product over P_D in log form");
    p_opt(tprod);
    D_opt(tprod);
    d_opt(tprod);
    tprod->add_option("--qtrunc", a.qtrunc, "Compare q^1 .. q^qtrunc (default 8)")->check(CLI::PositiveNumber);
    with(tprod, [](const Args& x) {
        return product_report(verify_twisted_product(x.p, x.D, x.d, x.config.bits, x.qtrunc.value_or(8)));
    });
    check_cmd(verify->add_subcommand("transformations", "Transformation identities of f_{d,p}"));

    auto* repro = app.add_subcommand("reproduce-paper", "Rerun the reference examples and print a pass/fail table");
    repro->add_option("--p", a.p, "Restrict to one level (2 or 3)");
    with(repro, cmd_reproduce);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }
    if (!action) {
        err << app.help();
        return exit_usage;
    }
    a.config.format = a.json ? Format::Json : parse_format(a.format);

    try {
        Report r = action();
        emit(r, a.config.format, out);
        return r.pass ? exit_pass : exit_failure;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::Usage ? exit_usage : exit_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace heegner::cli
