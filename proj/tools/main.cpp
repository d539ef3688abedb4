#include "realocus/periods.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef REALOCUS_DEFAULT_CURVES
#define REALOCUS_DEFAULT_CURVES "curves.txt"
#endif
#ifndef REALOCUS_INSTALLED_CURVES
#define REALOCUS_INSTALLED_CURVES REALOCUS_DEFAULT_CURVES
#endif

using namespace realocus;
using nlohmann::json;

namespace {

struct Config {
    std::string format = "table";
    std::size_t max_steps = 1000000;
    double tol = 1e-5;
    std::string curves;
    std::string out;
};

json jint(const Int& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

json jform(const Form& f) { return json::array({jint(f.a), jint(f.b), jint(f.c)}); }

json jmatrix(const IntMatrix& m) { return json::array({jint(m.a), jint(m.b), jint(m.c), jint(m.d)}); }

std::string g15(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json jnum(double x) { return json::parse(g15(x)); }

Int parse_int(const std::string& s)
{
    Int v;
    if (v.set_str(s, 10) != 0)
        throw input_error("not an integer: " + s);
    return v;
}

Form parse_form(const std::vector<std::string>& abc)
{
    if (abc.size() != 3)
        throw input_error("a form needs three coefficients A B C");
    return {parse_int(abc[0]), parse_int(abc[1]), parse_int(abc[2])};
}

void check_format(const Config& cfg, std::initializer_list<const char*> allowed)
{
    for (const char* f : allowed)
        if (cfg.format == f)
            return;
    throw input_error("unsupported --format " + cfg.format);
}

/* Plain text table with left aligned columns except the first and last. */
std::string render_table(const std::vector<std::vector<std::string>>& rows, bool right_last = true)
{
    std::vector<std::size_t> w;
    auto width = [](const std::string& s) {
        std::size_t n = 0;
        for (unsigned char ch : s)
            n += (ch & 0xC0) != 0x80;
        return n;
    };
    for (const auto& r : rows)
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (w.size() <= j)
                w.push_back(0);
            w[j] = std::max(w[j], width(r[j]));
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t j = 0; j < r.size(); ++j) {
            std::string pad(w[j] - width(r[j]), ' ');
            bool right = j == 0 || (right_last && j + 1 == r.size());
            if (j > 0)
                line += "  ";
            line += right ? pad + r[j] : r[j] + pad;
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out += line + "\n";
    }
    return out;
}

std::string curves_path(const Config& cfg)
{
    if (!cfg.curves.empty())
        return cfg.curves;
    if (const char* env = std::getenv("REALOCUS_CURVES"); env && *env)
        return env;
    // source tree first, so a build directory works without installing
    if (std::filesystem::exists(REALOCUS_DEFAULT_CURVES))
        return REALOCUS_DEFAULT_CURVES;
    return REALOCUS_INSTALLED_CURVES;
}

void emit(const Config& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f)
        throw input_error("cannot write " + cfg.out);
    f << text;
    if (!f)
        throw input_error("write failed: " + cfg.out);
}

std::vector<long> prime_range(long lo, long hi)
{
    std::vector<long> out;
    for (long n = std::max(lo, 5L); n <= hi; ++n)
        if (is_prime(n))
            out.push_back(n);
    return out;
}

std::string cmd_ncycle(const Config& cfg, long N, const Form& q)
{
    check_format(cfg, {"table", "json", "csv"});
    NCycle c = n_cycle(N, q, cfg.max_steps);
    if (cfg.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < c.size(); ++i)
            rows.push_back({{"n", i},
                            {"form", jform(c.forms[i])},
                            {"matrix", jmatrix(c.matrices[i].m)},
                            {"half_turn", c.matrices[i].half_turn},
                            {"case", tag_ascii(c.tags[i])}});
        json j{{"N", N}, {"input", jform(q)}, {"rows", rows}};
        return j.dump(2) + "\n";
    }
    if (cfg.format == "csv") {
        std::string out = "n,A,B,C,a,b,c,d,case\n";
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Form& f = c.forms[i];
            const IntMatrix& m = c.matrices[i].m;
            out += std::to_string(i) + "," + str(f.a) + "," + str(f.b) + "," + str(f.c) + "," +
                   str(m.a) + "," + str(m.b) + "," + str(m.c) + "," + str(m.d) + "," +
                   tag_ascii(c.tags[i]) + "\n";
        }
        return out;
    }
    std::vector<std::vector<std::string>> rows{{"n", "Q_n", "M_n", "Case"}};
    for (std::size_t i = 0; i < c.size(); ++i)
        rows.push_back({std::to_string(i), str(c.forms[i]), str(c.matrices[i].m), tag_label(c.tags[i])});
    return render_table(rows);
}

std::string cmd_components(const Config& cfg, long N)
{
    check_format(cfg, {"table", "json", "csv"});
    auto comps = components(N);
    std::vector<std::vector<std::string>> rows;
    json arr = json::array();
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const Component& c = comps[k];
        std::string kind = c.kind == ComponentKind::Cusp ? "cusp" : "noncusp";
        std::string sym = str(component_class(c));
        rows.push_back({std::to_string(k), kind, str(c.form), str(c.cls.rep),
                        std::to_string(c.cycle.size()), std::to_string(c.rows),
                        c.kind == ComponentKind::Cusp ? "half" : c.doubled ? "doubled" : "full", sym});
        arr.push_back({{"index", k}, {"kind", kind}, {"form", jform(c.form)},
                       {"class", jform(c.cls.rep)}, {"discriminant", jint(c.cls.D)},
                       {"cycle_length", c.cycle.size()}, {"rows", c.rows},
                       {"halfcycle", c.halfcycle}, {"doubled", c.doubled}, {"symbols", sym}});
    }
    if (cfg.format == "json")
        return json{{"N", N}, {"kappa", kappa(N)}, {"components", arr}}.dump(2) + "\n";
    if (cfg.format == "csv") {
        std::string out = "index,kind,form,class,cycle_length,rows,cycle,symbols\n";
        for (const auto& r : rows) {
            std::string line;
            for (std::size_t j = 0; j < r.size(); ++j)
                line += (j ? "," : "") + ("\"" + r[j] + "\"");
            out += line + "\n";
        }
        return out;
    }
    rows.insert(rows.begin(), {"k", "kind", "form", "class", "length", "rows", "cycle", "symbols"});
    return render_table(rows, false);
}

std::string cmd_manin(const Config& cfg, long N, std::optional<std::size_t> index,
                      const std::vector<std::string>& form)
{
    check_format(cfg, {"table", "json"});
    std::vector<MSymbol> sym;
    bool doubled = false;
    if (!form.empty()) {
        NCycle c = n_cycle(N, parse_form(form), cfg.max_steps);
        sym = component_class(c, c.size());
    } else {
        auto comps = components(N);
        std::size_t k = index.value_or(0);
        if (k >= comps.size())
            throw input_error("component index out of range, kappa = " + std::to_string(comps.size()));
        sym = component_class(comps[k]);
        doubled = comps[k].doubled;
    }
    if (cfg.format == "json") {
        json arr = json::array();
        for (const MSymbol& s : sym)
            arr.push_back(json::array({jint(s.c), jint(s.d)}));
        return json{{"N", N}, {"symbols", arr}, {"doubled", doubled}, {"text", str(sym)}}.dump(2) +
               "\n";
    }
    return (doubled ? "2[c] = " : "") + str(sym) + "\n";
}

std::string cmd_plot(const Config& cfg, long N, const Form& q, std::size_t rows)
{
    check_format(cfg, {"table", "svg", "json"});
    NCycle c = n_cycle(N, q, cfg.max_steps);
    if (c.size() == 0)
        throw input_error("empty cycle");
    std::size_t nrows = rows == 0 ? c.size() : std::min(rows, c.size());
    auto arcs = cycle_arcs(c, nrows);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const PlotArc& a : arcs)
            arr.push_back({{"from", {jnum(a.x0), jnum(a.y0)}},
                           {"to", {jnum(a.x1), jnum(a.y1)}},
                           {"form", jform(a.form)},
                           {"row", a.row},
                           {"tag", tag_ascii(a.tag)}});
        return arr.dump(2) + "\n";
    }
    const double scale = 60.0, half = (N + 1) / 2.0;
    double ymax = 1.5;
    for (const PlotArc& a : arcs)
        ymax = std::max({ymax, a.y0 + 0.25, a.y1 + 0.25});
    for (const PlotArc& a : arcs) {
        double cx = center(a.form).get_d(), R = std::sqrt(radius2(a.form).get_d());
        if ((a.x0 - cx) * (a.x1 - cx) <= 0)
            ymax = std::max(ymax, R + 0.25);
    }
    double W = 2 * half * scale, H = ymax * scale;
    auto X = [&](double x) { return g15((x + half) * scale); };
    auto Y = [&](double y) { return g15((ymax - y) * scale); };
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g15(W) << "\" height=\"" << g15(H)
      << "\" viewBox=\"0 0 " << g15(W) << " " << g15(H) << "\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << g15(W) << "\" height=\"" << g15(H)
      << "\" fill=\"white\"/>\n";
    /* outline of F_N */
    long h = (N - 1) / 2;
    double ry = std::sqrt(3.0) / 2;
    std::string r1 = g15(scale);
    s << "<path fill=\"none\" stroke=\"#444\" stroke-width=\"1\" d=\"";
    s << "M " << X(-h - 0.5) << " " << Y(ymax) << " L " << X(-h - 0.5) << " " << Y(ry);
    for (long k = -h; k <= h; ++k) {
        if (k == 0) {
            /* the flap S F under |tau| = 1 */
            s << " A " << r1 << " " << r1 << " 0 0 1 " << X(0) << " " << Y(0);
            s << " A " << r1 << " " << r1 << " 0 0 1 " << X(0.5) << " " << Y(ry);
            continue;
        }
        s << " A " << r1 << " " << r1 << " 0 0 1 " << X(k + 0.5) << " " << Y(ry);
    }
    s << " L " << X(h + 0.5) << " " << Y(ymax) << "\"/>\n";
    for (long k = -h; k <= h + 1; ++k)
        s << "<line x1=\"" << X(k - 0.5) << "\" y1=\"" << Y(ry) << "\" x2=\"" << X(k - 0.5)
          << "\" y2=\"" << Y(ymax) << "\" stroke=\"#ccc\" stroke-width=\"0.5\"/>\n";
    /* elliptic points k + i (order 2) and k + rho (order 3) */
    for (long k = -h; k <= h; ++k) {
        if ((Int(k) * k + 1) % N == 0)
            s << "<circle cx=\"" << X(k) << "\" cy=\"" << Y(1) << "\" r=\"4\" fill=\"black\"/>\n";
        if ((Int(k) * k + k + 1) % N == 0)
            s << "<rect x=\"" << g15((k + 0.5 + half) * scale - 3.5) << "\" y=\""
              << g15((ymax - ry) * scale - 3.5) << "\" width=\"7\" height=\"7\" fill=\"black\"/>\n";
    }
    for (const PlotArc& a : arcs) {
        double R = std::sqrt(radius2(a.form).get_d());
        int hue = static_cast<int>(360.0 * a.row / nrows);
        bool sweep = a.x1 > a.x0;
        s << "<path fill=\"none\" stroke=\"hsl(" << hue << ",70%,40%)\" stroke-width=\"2\" d=\"M "
          << X(a.x0) << " " << Y(a.y0) << " A " << g15(R * scale) << " " << g15(R * scale)
          << " 0 0 " << (sweep ? 1 : 0) << " " << X(a.x1) << " " << Y(a.y1) << "\"><title>"
          << a.row << " " << str(a.form) << " " << tag_ascii(a.tag) << "</title></path>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string cmd_periods(const Config& cfg, long N, const std::string& label,
                        std::optional<std::size_t> index, const std::vector<std::string>& form)
{
    check_format(cfg, {"table", "json"});
    auto curves = load_curves(curves_path(cfg));
    const Curve& e = find_curve(curves, label);
    if (e.conductor != N)
        throw input_error("curve " + label + " has conductor " + std::to_string(e.conductor));
    Newform f(e);
    PeriodResult r;
    if (!form.empty()) {
        NCycle c = n_cycle(N, parse_form(form), cfg.max_steps);
        r = alpha(f, component_class(c, c.size()), false, cfg.tol);
    } else {
        auto comps = components(N);
        std::size_t k = index.value_or(0);
        if (k >= comps.size())
            throw input_error("component index out of range");
        r = alpha(f, comps[k], cfg.tol);
    }
    json j{{"omega_E", jnum(r.omega_e)},
           {"omega_EQ", jnum(r.omega_eq)},
           {"alpha", r.alpha},
           {"residual", jnum(r.residual)}};
    return j.dump(2) + "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Real loci of modular curves: codes, components, M-symbols and periods"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--format", cfg.format, "table, json, csv or svg")
        ->capture_default_str()
        ->check(CLI::IsMember({"table", "json", "csv", "svg"}));
    app.add_option("--max-steps", cfg.max_steps, "cycle step limit")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "relative tolerance for alpha")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--curves", cfg.curves, "curve data file (else $REALOCUS_CURVES)");
    app.add_option("--out", cfg.out, "write output to a file");

    std::string sD;
    auto* pell = app.add_subcommand("pell", "fundamental solution of x^2 - D y^2 = 1");
    pell->add_option("D", sD)->required();

    auto* hclass = app.add_subcommand("hclass", "class number h(D), wide for D > 0");
    hclass->add_option("D", sD)->required();

    std::vector<long> range;
    auto* kap = app.add_subcommand("kappa", "N,h(N),h(4N),kappa for primes in [N1, N2]");
    kap->add_option("N", range)->required()->expected(1, 2);

    long N = 0;
    std::vector<std::string> abc;
    auto* ncyc = app.add_subcommand("ncycle", "N-cycle table of the form [A,B,C]");
    ncyc->add_option("N", N)->required();
    ncyc->add_option("ABC", abc)->required()->expected(3)->allow_extra_args(false);

    auto* comp = app.add_subcommand("components", "components of the real locus");
    comp->add_option("N", N)->required();

    std::optional<std::size_t> index;
    std::vector<std::string> form;
    auto* man = app.add_subcommand("manin", "M-symbol sum of a component");
    man->add_option("N", N)->required();
    man->add_option("K", index, "component index");
    man->add_option("--form", form, "use the full cycle of A B C instead")->expected(3);

    auto* rank = app.add_subcommand("rank", "N,kappa,genus,rank for primes in [N1, N2]");
    rank->add_option("N", range)->required()->expected(1, 2);
    bool header = false;
    rank->add_flag("--header", header, "print a header line");

    std::size_t rows = 0;
    auto* plot = app.add_subcommand("plot", "arcs of the N-cycle inside F_N");
    plot->add_option("N", N)->required();
    plot->add_option("ABC", abc)->required()->expected(3);
    plot->add_option("--rows", rows, "rows to draw, 0 for all");

    std::string label;
    auto* per = app.add_subcommand("periods", "alpha for a component and an optimal curve");
    per->add_option("--level", N)->required();
    per->add_option("--curve", label)->required();
    per->add_option("--component", index);
    per->add_option("--form", form)->expected(3);

    for (auto* sub : {ncyc, plot, man, per})
        sub->allow_extras(false);
    /* negative coefficients are values, not flags */
    for (auto* sub : {ncyc, plot})
        sub->positionals_at_end(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*pell) {
            check_format(cfg, {"table"});
            PellSolution s = pell_fundamental(parse_int(sD));
            emit(cfg, str(s.x) + " " + str(s.y) + "\n");
        } else if (*hclass) {
            check_format(cfg, {"table"});
            emit(cfg, std::to_string(class_number(parse_int(sD))) + "\n");
        } else if (*kap) {
            check_format(cfg, {"table", "csv"});
            long hi = range.size() > 1 ? range[1] : range[0];
            if (range.size() == 1 && (range[0] < 5 || !is_prime(range[0])))
                throw input_error("kappa needs a prime N >= 5");
            std::string out;
            for (long p : prime_range(range[0], hi)) {
                std::string h1 = p % 4 == 1 ? std::to_string(class_number(Int(p))) : "";
                out += std::to_string(p) + "," + h1 + "," + std::to_string(class_number(Int(4 * p))) +
                       "," + std::to_string(kappa(p)) + "\n";
            }
            emit(cfg, out);
        } else if (*ncyc) {
            emit(cfg, cmd_ncycle(cfg, N, parse_form(abc)));
        } else if (*comp) {
            emit(cfg, cmd_components(cfg, N));
        } else if (*man) {
            emit(cfg, cmd_manin(cfg, N, index, form));
        } else if (*rank) {
            check_format(cfg, {"table", "csv"});
            long hi = range.size() > 1 ? range[1] : range[0];
            std::string out = header ? "N,kappa,genus,rank\n" : "";
            for (long p : prime_range(range[0], hi))
                out += std::to_string(p) + "," + std::to_string(kappa(p)) + "," +
                       std::to_string(genus_x0(p)) + "," + std::to_string(component_rank(p)) + "\n";
            emit(cfg, out);
        } else if (*plot) {
            emit(cfg, cmd_plot(cfg, N, parse_form(abc), rows));
        } else if (*per) {
            emit(cfg, cmd_periods(cfg, N, label, index, form));
        }
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
