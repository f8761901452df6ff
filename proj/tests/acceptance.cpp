// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here and printed with each result.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "cfpde/adomian.hpp"
#include "cfpde/cadm.hpp"
#include "cfpde/cli.hpp"
#include "cfpde/crdtm.hpp"
#include "cfpde/problem.hpp"
#include "support.hpp"

using namespace cfpde;
using testing::ex;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

const Rational kOrderSet[] = {Rational(1), Rational(1, 2), Rational(3, 4)};

ParamEnv env_of(const ProblemSpec& p) { return {{"a", p.alpha}, {"b", p.beta}}; }
Rational alternating(unsigned n) { return Rational(n % 2 ? -1 : 1); }

// Criteria 1-3: every coefficient must match the closed-form term structurally.
Outcome term_oracle(const char* name, const std::function<Expr(const ProblemSpec&, unsigned)>& expected) {
    Outcome o;
    int checked = 0;
    for (const auto& a : kOrderSet) {
        for (const auto& b : kOrderSet) {
            const ProblemSpec p = with_orders(builtin(name), a, b);
            const TSeries s = cadm_solve(p, 7).series;
            for (unsigned n = 0; n <= 7; ++n, ++checked) {
                if (equivalent(s.coeff(n), expected(p, n)) == Equivalence::Structural) continue;
                o.pass = false;
                o.detail = "alpha=" + a.to_string() + " beta=" + b.to_string() + " n=" + std::to_string(n) +
                           ": got " + s.coeff(n).to_string();
                return o;
            }
        }
    }
    o.detail = std::to_string(checked) + " coefficients structurally equal (alpha, beta in {1, 1/2, 3/4}, m = 7)";
    return o;
}

Outcome criterion_1() {
    return term_oracle("diffusion", [](const ProblemSpec& p, unsigned n) {
        return alternating(n) / (factorial(n) * p.alpha.pow(n)) * ex("sin(x^b/b)", env_of(p));
    });
}

Outcome criterion_2() {
    return term_oracle("gas", [](const ProblemSpec& p, unsigned n) {
        return (factorial(n) * p.alpha.pow(n)).reciprocal() * ex("exp(-x^b/b)", env_of(p));
    });
}

Outcome criterion_3() {
    return term_oracle("advection", [](const ProblemSpec& p, unsigned n) {
        if (n == 0) return ex("(x^a - a)/(2*a)", env_of(p));
        return alternating(n) / (Rational(2) * p.alpha).pow(static_cast<long>(n) + 1) * ex("x^a + a", env_of(p));
    });
}

Outcome criterion_4() {
    Outcome o;
    testing::Rng rng(2024);
    int pairs = 0;
    int numeric = 0;
    for (const auto& name : builtin_names()) {
        for (int i = 0; i < 5; ++i, ++pairs) {
            const Rational a = testing::random_order(rng, 9);
            const Rational b = testing::random_order(rng, 9);
            const ProblemSpec p = with_orders(builtin(name), a, b);
            const TSeries c = cadm_solve(p, 7).series;
            const TSeries r = crdtm_solve(p, 7);
            for (std::size_t k = 0; k <= 7; ++k) {
                const Equivalence e = equivalent(c.coeff(k), r.coeff(k));
                if (e == Equivalence::NumericProbable) {
                    ++numeric;
                    std::printf("    note: %s alpha=%s beta=%s grade %zu equal by numeric probing\n", name.c_str(),
                                a.to_string().c_str(), b.to_string().c_str(), k);
                }
                if (is_equivalent(e)) continue;
                o.pass = false;
                o.detail = name + " alpha=" + a.to_string() + " beta=" + b.to_string() + " grade " +
                           std::to_string(k) + " differs";
                return o;
            }
        }
    }
    o.detail = std::to_string(pairs) + " (problem, alpha, beta) cases agree at m = 7, " + std::to_string(numeric) +
               " coefficients needed the numeric fallback";
    return o;
}

Outcome criterion_5() {
    Outcome o;
    const Orders orders{Rational(3, 4), Rational(1, 2)};
    auto u = [](std::size_t i) { return SymPoly::atom(i); };
    auto db = [&](const SymPoly& p) { return p.derivative(OrderParam::Beta, orders.beta); };
    auto da = [&](const SymPoly& p) { return p.derivative(OrderParam::Alpha, orders.alpha); };
    const Rational two(2);

    const auto gas = adomian_symbolic(parse_operator("u^2 + u*Db(u)", orders), 3, orders);
    const std::vector<SymPoly> gas_expected{
        u(0) * u(0) + u(0) * db(u(0)),
        two * u(0) * u(1) + u(0) * db(u(1)) + u(1) * db(u(0)),
        two * u(0) * u(2) + u(1) * u(1) + u(0) * db(u(2)) + u(1) * db(u(1)) + u(2) * db(u(0)),
        two * u(0) * u(3) + two * u(1) * u(2) + u(0) * db(u(3)) + u(1) * db(u(2)) + u(2) * db(u(1)) + u(3) * db(u(0)),
    };
    const auto adv = adomian_symbolic(parse_operator("u*Da(u)", orders), 3, orders);
    const std::vector<SymPoly> adv_expected{
        u(0) * da(u(0)),
        u(0) * da(u(1)) + u(1) * da(u(0)),
        u(0) * da(u(2)) + u(1) * da(u(1)) + u(2) * da(u(0)),
        u(0) * da(u(3)) + u(1) * da(u(2)) + u(2) * da(u(1)) + u(3) * da(u(0)),
    };
    if (gas != gas_expected || adv != adv_expected) {
        o.pass = false;
        o.detail = "listed polynomials differ";
        return o;
    }

    testing::Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const Rational beta = testing::random_order(rng);
        const Orders ord{Rational(1), beta};
        struct Mono {
            Rational c;
            unsigned p, q;
        };
        std::vector<Mono> monos;
        std::vector<OperatorExpr> summands;
        const long count = testing::uniform(rng, 1, 3);
        for (long i = 0; i < count; ++i) {
            const auto deg = static_cast<unsigned>(testing::uniform(rng, 1, 3));
            const auto p = static_cast<unsigned>(testing::uniform(rng, 0, deg));
            const Mono m{testing::random_rational(rng), p, deg - p};
            std::vector<OperatorExpr> f;
            for (unsigned k = 0; k < m.p; ++k) f.push_back(OperatorExpr::unknown());
            for (unsigned k = 0; k < m.q; ++k) f.push_back(OperatorExpr::space_deriv(OperatorExpr::unknown()));
            summands.push_back(OperatorExpr::scale(m.c, OperatorExpr::mul(f)));
            monos.push_back(m);
        }
        const OperatorExpr n = OperatorExpr::add(summands);
        std::vector<Expr> parts;
        std::vector<Expr> dparts;
        for (int k = 0; k <= 5; ++k) {
            parts.push_back(testing::random_expr(rng, 1 + static_cast<int>(testing::uniform(rng, 0, 1))));
            dparts.push_back(conf_deriv(parts.back(), beta));
        }
        const auto got = adomian_polynomials(n, parts, ord);
        for (std::size_t k = 0; k <= 5; ++k) {
            Expr want;
            for (const auto& m : monos) want += testing::adomian_by_tuples(m.c, m.p, m.q, k, parts, dparts);
            if (is_equivalent(equivalent(got[k], want))) continue;
            o.pass = false;
            o.detail = "random nonlinearity " + n.to_string() + " differs at A" + std::to_string(k);
            return o;
        }
    }
    o.detail = "A0..A3 listings for u^2 + u*Db(u) and u*Da(u) structural; 20 random nonlinearities match tuple "
               "enumeration up to A5";
    return o;
}

Outcome criterion_6() {
    Outcome o;
    for (const auto& name : builtin_names()) {
        const ProblemSpec p = builtin(name);
        for (const auto& [method, series] :
             {std::pair{"cadm", cadm_solve(p, 7).series}, std::pair{"crdtm", crdtm_solve(p, 7)}}) {
            const auto r = residual(p, series);
            for (std::size_t k = 0; k < r.size(); ++k) {
                if (r[k].is_zero() && r.size() == 7) continue;
                o.pass = false;
                o.detail = name + " (" + method + ") grade " + std::to_string(k) + " residual " + r[k].to_string();
                return o;
            }
        }
    }
    o.detail = "grades 0..6 vanish exactly for all built-ins, both methods";
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const double x = 1.0;
    const double t = 0.5;
    const ProblemSpec d = with_orders(builtin("diffusion"), Rational(1), Rational(1));
    const ProblemSpec g = with_orders(builtin("gas"), Rational(1), Rational(1));
    const double vd = series_eval(cadm_solve(d, 8).series, x, t);
    const double vg = series_eval(cadm_solve(g, 8).series, x, t);

    // Independent partial sums of sin(1) e^(-t) and e^(t - 1).
    double pd = 0.0;
    double pg = 0.0;
    double term = 1.0;
    for (int n = 0; n <= 8; ++n) {
        pd += (n % 2 ? -1.0 : 1.0) * std::sin(x) * term;
        pg += std::exp(-x) * term;
        term *= t / (n + 1);
    }
    const double ed = std::abs(vd - std::sin(1.0) * std::exp(-0.5));
    const double eg = std::abs(vg - std::exp(-0.5));
    o.pass = ed <= 2e-7 && eg <= 2e-6 && std::abs(vd - pd) <= 1e-14 && std::abs(vg - pg) <= 1e-14;
    char buf[200];
    std::snprintf(buf, sizeof buf, "m = 8 at (1, 0.5): diffusion error %.3g (tol 2e-7), gas error %.3g (tol 2e-6)", ed,
                  eg);
    o.detail = buf;
    return o;
}

Outcome criterion_8() {
    Outcome o;
    double worst_ratio = 0.0;
    int points = 0;
    for (const Rational& alpha : {Rational(1), Rational(1, 2)}) {
        const ProblemSpec p = with_orders(builtin("advection"), alpha, alpha);
        const TSeries cadm = cadm_solve(p, 12).series;
        const TSeries crdtm = crdtm_solve(p, 12);
        const double a = alpha.to_double();
        // t^alpha < 2 alpha: t < 2 for alpha = 1, t < 1 for alpha = 1/2.
        const double t_max = a == 1.0 ? 1.8 : 0.9;
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j, ++points) {
                const double x = 0.5 + 1.5 * i / 9.0;
                const double t = t_max * (j + 1) / 10.0;
                const double closed = (std::pow(x, a) - std::pow(t, a) - a) / (std::pow(t, a) + 2 * a);
                const double r = std::pow(t, a) / (2 * a);
                // Alternating tail with ratio r < 1: bounded by the first omitted term.
                const double bound = (std::pow(x, a) + a) / (2 * a) * std::pow(r, 13) + 1e-13;
                for (const TSeries* s : {&cadm, &crdtm}) {
                    const double err = std::abs(series_eval(*s, x, t) - closed);
                    worst_ratio = std::max(worst_ratio, err / bound);
                    if (err > bound) o.pass = false;
                }
            }
        }
    }

    // The alpha = 1 closed form must solve u_t + (1 + u) u_x = 0. The variant
    // with denominator t - 2 solves the same equation but starts from the
    // wrong initial profile, so it is told apart by u(x, 0).
    const ProblemSpec classical = with_orders(builtin("advection"), Rational(1), Rational(1));
    ProblemSpec misprint = classical;
    misprint.exact = parse_expression("(x^a - t^a - a)/(t^a - 2*a)");
    double fd = 0.0;
    double ic_gap = 0.0;
    double ic_gap_misprint = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double x = 0.5 + 1.5 * i / 9.0;
        const double ic = eval_at(classical.ic, x);
        ic_gap = std::max(ic_gap, std::abs(exact_eval(classical, x, 0.0) - ic));
        ic_gap_misprint = std::max(ic_gap_misprint, std::abs(exact_eval(misprint, x, 0.0) - ic));
        for (int j = 0; j < 10; ++j) {
            const double t = 0.1 + 0.9 * j / 9.0;
            fd = std::max(fd, std::abs(testing::fd_pde_residual(classical, x, t)));
        }
    }
    if (fd >= 1e-5 || ic_gap > 1e-15) o.pass = false;
    char buf[300];
    std::snprintf(buf, sizeof buf,
                  "m = 12 within tail bound at %d points per method (worst err/bound %.3g); "
                  "FD residual of (x-t-1)/(t+2) %.3g (tol 1e-5); t-2 denominator misses u(x,0) by %.3g",
                  points, worst_ratio, fd, ic_gap_misprint);
    o.detail = buf;
    return o;
}

Outcome criterion_9() {
    Outcome o;
    testing::Rng rng(9);
    int laws = 0;
    auto fail = [&](const std::string& what) {
        if (o.pass) o.detail = what;
        o.pass = false;
    };
    for (int i = 0; i < 10000; ++i, ++laws) {
        const Rational a = testing::random_order(rng);
        const Expr f = testing::random_expr(rng, 2);
        const Expr g = testing::random_expr(rng, 1);
        auto T = [&](const Expr& e) { return conf_deriv(e, a); };
        bool ok = true;
        switch (i % 6) {
            case 0: {
                const Rational p = testing::random_rational(rng);
                const Rational q = testing::random_rational(rng);
                ok = is_equivalent(equivalent(T(p * f + q * g), p * T(f) + q * T(g)));
                break;
            }
            case 1: {
                const Rational p = testing::random_rational(rng, 7, 5);
                ok = equivalent(T(Expr::x_pow(p)), p * Expr::x_pow(p - a)) == Equivalence::Structural;
                break;
            }
            case 2: ok = T(Expr(testing::random_rational(rng, 50, 7))).is_zero(); break;
            case 3: ok = is_equivalent(equivalent(T(f * g), f * T(g) + g * T(f))); break;
            case 4: {
                // Invertible denominator: c x^q exp(k x^r).
                const Expr h = testing::random_rational(rng) * Expr::x_pow(testing::random_rational(rng, 4, 3)) *
                               exp(testing::random_rational(rng, 2, 2) * Expr::x_pow(Rational(testing::uniform(rng, 1, 4), 2)));
                ok = is_equivalent(equivalent(T(f * reciprocal(h)) * h * h, h * T(f) - f * T(h)));
                break;
            }
            default: ok = equivalent(T(f), Expr::x_pow(Rational(1) - a) * diff(f)) == Equivalence::Structural;
        }
        if (!ok) fail("law " + std::to_string(i % 6 + 1) + " fails for f = " + f.to_string());
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double h = 1e-5;
    int fd_cases = 0;
    for (; fd_cases < 2000; ++fd_cases) {
        const Expr f = testing::random_expr(rng, 2);
        const double x = 0.5 + 1.5 * unit(rng);
        const double d = eval_at(diff(f), x);
        const double fd = (eval_at(f, x + h) - eval_at(f, x - h)) / (2 * h);
        if (std::abs(fd - d) > 1e-6 * std::max(1.0, std::abs(d))) fail("diff disagrees with FD for " + f.to_string());
    }

    int series = 0;
    for (; series < 500; ++series) {
        const Rational a = testing::random_order(rng);
        const TSeries s = testing::random_series(rng, a, static_cast<std::size_t>(testing::uniform(rng, 0, 6)));
        if (!(time_derivative(inv_L_series(s)).truncated(s.size() - 1) == s)) fail("L(Linv(s)) != s");
    }
    if (o.pass)
        o.detail = std::to_string(laws) + " derivative-rule cases, " + std::to_string(fd_cases) +
                   " FD checks (h 1e-5, rel 1e-6), " + std::to_string(series) + " exact L(Linv(s)) = s up to grade 6";
    return o;
}

Outcome criterion_10() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "cfpde_acceptance_a.csv";
    const auto b = dir / "cfpde_acceptance_b.csv";
    auto run = [](const std::filesystem::path& out) {
        std::ostringstream so;
        std::ostringstream se;
        return run_cli({"cfpde", "compare", "--problem", "gas", "--out", out.string()}, so, se);
    };
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const int ra = run(a);
    const int rb = run(b);
    const std::string ca = slurp(a);
    const std::string cb = slurp(b);
    o.pass = ra == 0 && rb == 0 && !ca.empty() && ca == cb;
    o.detail = "two compare runs (gas, default 50x50 grid): " + std::to_string(ca.size()) + " bytes, " +
               (ca == cb ? "identical" : "different");
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"diffusion term oracle", criterion_1},
        {"gas dynamics term oracle", criterion_2},
        {"advection term oracle", criterion_3},
        {"CADM and CRDTM coefficients agree", criterion_4},
        {"Adomian polynomial lists", criterion_5},
        {"residual vanishes below the truncation order", criterion_6},
        {"classical reductions", criterion_7},
        {"advection closed form", criterion_8},
        {"kernel laws", criterion_9},
        {"deterministic compare output", criterion_10},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [title, fn] : criteria) {
        ++index;
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        failed += out.pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s\n", out.pass ? "PASS" : "FAIL", index, title, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
