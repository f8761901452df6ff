#include "cfpde/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cfpde/adomian.hpp"
#include "cfpde/cadm.hpp"
#include "cfpde/crdtm.hpp"
#include "cfpde/problem.hpp"
#include "cfpde/report.hpp"

namespace cfpde {

namespace {

struct Options {
    std::string problem;
    std::string method = "both";
    std::size_t order = kDefaultOrder;
    std::string alpha;
    std::string beta;
    std::string grid;
    std::string out;
    std::string format = "csv";
    std::string nonlinearity;
    bool check_equivalence = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown for failures located in a problem file; maps to the parse exit code.
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_flag_rational(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects a rational p/q, got '" + text + "'");
    }
}

ProblemSpec load(const Options& o) {
    ProblemSpec p;
    try {
        p = load_problem(o.problem);
    } catch (const ParseError& e) {
        throw LoadError(o.problem + ":" + e.what());
    } catch (const std::runtime_error& e) {
        throw LoadError(e.what());
    }
    if (o.alpha.empty() && o.beta.empty()) return p;
    const Rational alpha = o.alpha.empty() ? p.alpha : parse_flag_rational(o.alpha, "--alpha");
    const Rational beta = o.beta.empty() ? p.beta : parse_flag_rational(o.beta, "--beta");
    try {
        return with_orders(p, alpha, beta);
    } catch (const ParseError& e) {
        throw LoadError(o.problem + " (with --alpha/--beta): " + e.detail());
    }
}

GridSpec grid_of(const Options& o) {
    if (o.grid.empty()) return {};
    try {
        return GridSpec::parse(o.grid);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Method method_of(const Options& o) {
    try {
        return parse_method(o.method);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& write) {
    if (o.out.empty()) {
        write(out);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
    write(file);
}

std::string series_term_text(const TSeries& term) {
    std::string s;
    for (std::size_t k = 0; k < term.size(); ++k) {
        const Expr& c = term.coeffs()[k];
        if (c.is_zero()) continue;
        std::string piece = c.to_string();
        if (k > 0) {
            if (c.terms().size() > 1) piece = "(" + piece + ")";
            const Rational power = term.alpha() * Rational(static_cast<long>(k));
            piece += power.is_one() ? "*t" : power.is_integer() ? "*t^" + power.to_string() : "*t^(" + power.to_string() + ")";
        }
        s += s.empty() ? piece : " + " + piece;
    }
    return s.empty() ? "0" : s;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const ProblemSpec p = load(o);
    const Method method = method_of(o);
    const GridSpec grid = grid_of(o);
    std::optional<TSeries> cadm;
    std::optional<TSeries> crdtm;
    if (method != Method::Crdtm) cadm = cadm_solve(p, o.order).series;
    if (method != Method::Cadm) crdtm = crdtm_solve(p, o.order);
    ErrorReport report = error_table(p, cadm, crdtm, grid);
    // solve reports series values only; compare adds the reference columns.
    for (auto& row : report.rows) {
        row.exact.reset();
        row.err_cadm.reset();
        row.err_crdtm.reset();
    }
    emit(o, out, [&](std::ostream& os) { write_csv(os, report); });
    if (!o.out.empty()) err << "wrote " << report.rows.size() << " rows to " << o.out << '\n';
    return kExitOk;
}

int cmd_terms(const Options& o, std::ostream& out) {
    const ProblemSpec p = load(o);
    const Method method = method_of(o);
    std::ostringstream os;
    if (method != Method::Crdtm) {
        const CadmSolution sol = cadm_solve(p, o.order);
        for (std::size_t n = 0; n < sol.terms.size(); ++n)
            os << "u" << n << " = " << series_term_text(sol.terms[n]) << '\n';
    }
    if (method != Method::Cadm) {
        const TSeries spectra = crdtm_solve(p, o.order);
        for (std::size_t k = 0; k < spectra.size(); ++k) os << "U" << k << " = " << spectra.coeffs()[k] << '\n';
    }
    emit(o, out, [&](std::ostream& s) { s << os.str(); });
    return kExitOk;
}

int cmd_adomian(const Options& o, std::ostream& out) {
    const Rational alpha = o.alpha.empty() ? Rational(1) : parse_flag_rational(o.alpha, "--alpha");
    const Rational beta = o.beta.empty() ? Rational(1) : parse_flag_rational(o.beta, "--beta");
    const Orders orders{alpha, beta};
    OperatorExpr op;
    try {
        op = parse_operator(o.nonlinearity, orders);
    } catch (const ParseError& e) {
        throw LoadError(std::string("--nonlinearity: ") + e.what());
    } catch (const OperatorError& e) {
        throw LoadError(std::string("--nonlinearity: ") + e.what());
    }
    const auto polys = adomian_symbolic(op, o.order, orders);
    std::ostringstream os;
    for (std::size_t i = 0; i < polys.size(); ++i) os << "A" << i << " = " << polys[i].to_string() << '\n';
    emit(o, out, [&](std::ostream& s) { s << os.str(); });
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
    const ProblemSpec p = load(o);
    const Method method = o.method == "both" ? Method::Both : method_of(o);
    bool ok = true;
    auto report = [&](const char* name, const TSeries& s) {
        const auto r = residual(p, s);
        std::size_t bad = 0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k].is_zero()) continue;
            ++bad;
            out << name << ": residual at grade " << k << " = " << r[k] << '\n';
        }
        out << name << ": " << (bad == 0 ? "ok" : "FAILED") << " (" << r.size() << " grades checked, order "
            << o.order << ")\n";
        ok = ok && bad == 0;
    };
    if (method != Method::Crdtm) report("cadm", cadm_solve(p, o.order).series);
    if (method != Method::Cadm) report("crdtm", crdtm_solve(p, o.order));
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    const ProblemSpec p = load(o);
    const GridSpec grid = grid_of(o);
    const TSeries cadm = cadm_solve(p, o.order).series;
    const TSeries crdtm = crdtm_solve(p, o.order);
    const ErrorReport report = error_table(p, cadm, crdtm, grid);
    emit(o, out, [&](std::ostream& os) { write_csv(os, report); });

    if (report.max_err_cadm) err << "max |cadm - exact|  = " << format_double(*report.max_err_cadm) << '\n';
    if (report.max_err_crdtm) err << "max |crdtm - exact| = " << format_double(*report.max_err_crdtm) << '\n';
    if (!o.check_equivalence) return kExitOk;

    bool same = true;
    for (std::size_t k = 0; k < cadm.size(); ++k) {
        const Equivalence e = equivalent(cadm.coeff(k), crdtm.coeff(k));
        if (e == Equivalence::NumericProbable) err << "grade " << k << ": equal (numeric-probable)\n";
        if (!is_equivalent(e)) {
            err << "grade " << k << ": cadm and crdtm coefficients differ\n";
            same = false;
        }
    }
    if (report.max_method_gap && *report.max_method_gap > 1e-12) {
        err << "pointwise gap between methods " << format_double(*report.max_method_gap) << " exceeds 1e-12\n";
        same = false;
    }
    return same ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Series solutions of conformable fractional PDEs (Adomian decomposition and reduced differential transform)"};
    app.name(args.empty() ? "cfpde" : args.front());
    app.require_subcommand(1);
    Options o;

    auto add_problem = [&](CLI::App* sub) { sub->add_option("--problem", o.problem, "problem file or built-in name")->required(); };
    auto add_orders = [&](CLI::App* sub) {
        sub->add_option("--order", o.order, "truncation order m")->capture_default_str();
        sub->add_option("--alpha", o.alpha, "override alpha (p/q)");
        sub->add_option("--beta", o.beta, "override beta (p/q)");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path (default: stdout)");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
    };
    auto add_method = [&](CLI::App* sub) {
        sub->add_option("--method", o.method, "cadm, crdtm or both")->check(CLI::IsMember({"cadm", "crdtm", "both"}))->capture_default_str();
    };

    CLI::App* solve = app.add_subcommand("solve", "evaluate the series on a grid and write CSV");
    add_problem(solve);
    add_method(solve);
    add_orders(solve);
    solve->add_option("--grid", o.grid, "x=a:b:n,t=c:d:n");
    add_output(solve);

    CLI::App* terms = app.add_subcommand("terms", "print the series components");
    add_problem(terms);
    add_method(terms);
    add_orders(terms);
    add_output(terms);

    CLI::App* adomian = app.add_subcommand("adomian", "print Adomian polynomials of a nonlinearity");
    adomian->add_option("--nonlinearity", o.nonlinearity, "operator in u, e.g. \"u*Db(u)+u^2\"")->required();
    add_orders(adomian);
    add_output(adomian);

    CLI::App* check = app.add_subcommand("check", "verify that the series solves the equation up to its order");
    add_problem(check);
    add_method(check);
    add_orders(check);

    CLI::App* compare = app.add_subcommand("compare", "CSV of both methods against the exact solution");
    add_problem(compare);
    add_orders(compare);
    compare->add_option("--grid", o.grid, "x=a:b:n,t=c:d:n");
    add_output(compare);
    compare->add_flag("--check-equivalence", o.check_equivalence, "fail unless both methods agree");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(o, out, err);
        if (*terms) return cmd_terms(o, out);
        if (*adomian) return cmd_adomian(o, out);
        if (*check) return cmd_check(o, out);
        if (*compare) return cmd_compare(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const LoadError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        err << "error: " << (o.problem.empty() ? std::string() : o.problem + ": ") << e.what() << '\n';
        return kExitSolver;
    }
    return kExitUsage;
}

}  // namespace cfpde
