// Shared helpers for the test binaries: seeded random expressions and
// independent numeric / brute-force oracles.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cfpde/adomian.hpp"
#include "cfpde/expr.hpp"
#include "cfpde/graded_series.hpp"
#include "cfpde/operator_ast.hpp"
#include "cfpde/parser.hpp"
#include "cfpde/problem.hpp"

namespace cfpde::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Non-zero p/q with |p| <= max_num, 1 <= q <= max_den.
inline Rational random_rational(Rng& rng, long max_num = 5, long max_den = 4) {
    long p = 0;
    while (p == 0) p = uniform(rng, -max_num, max_num);
    return Rational(p, uniform(rng, 1, max_den));
}

/// Order in (0, 1] with a small denominator.
inline Rational random_order(Rng& rng, long max_den = 6) {
    const long q = uniform(rng, 1, max_den);
    return Rational(uniform(rng, 1, q), q);
}

inline Expr ex(const char* text, const ParamEnv& env = {}) { return canonicalize(parse_expression(text), env); }

/// x^q, exp(c x^q), sin(c x^q) or cos(c x^q) with small c and q.
inline Expr random_atom(Rng& rng) {
    const Rational q(uniform(rng, 1, 6), uniform(rng, 1, 3));
    const Expr base = Expr::x_pow(q);
    const Expr arg = Rational(uniform(rng, 1, 3), uniform(rng, 1, 2)) * Expr::x_pow(Rational(uniform(rng, 1, 2), 2));
    switch (uniform(rng, 0, 4)) {
        case 0: return Expr::x_pow(Rational(uniform(rng, -2, 6), uniform(rng, 1, 3)));
        case 1: return exp(uniform(rng, 0, 1) ? arg : -arg);
        case 2: return sin(arg);
        case 3: return cos(arg);
        default: return base;
    }
}

/// Sum of `terms` terms, each a rational times one or two atoms.
inline Expr random_expr(Rng& rng, int terms = 2) {
    Expr e;
    for (int i = 0; i < terms; ++i) {
        Expr t = random_rational(rng) * random_atom(rng);
        if (uniform(rng, 0, 1)) t *= random_atom(rng);
        e += t;
    }
    return e;
}

inline TSeries random_series(Rng& rng, const Rational& alpha, std::size_t order) {
    std::vector<Expr> c;
    for (std::size_t k = 0; k <= order; ++k) c.push_back(uniform(rng, 0, 4) == 0 ? Expr() : random_expr(rng, 1));
    return TSeries(alpha, c);
}

/// Brute-force Adomian polynomial of c * u^p * (D u)^q: the sum over all index
/// tuples (i_1..i_p, j_1..j_q) with total n of prod u_i * prod D u_j.
inline Expr adomian_by_tuples(const Rational& c, unsigned p, unsigned q, std::size_t n, const std::vector<Expr>& parts,
                              const std::vector<Expr>& dparts) {
    const unsigned slots = p + q;
    if (slots == 0) return n == 0 ? Expr(c) : Expr();
    Expr total;
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
        std::size_t sum = 0;
        for (auto i : idx) sum += i;
        if (sum == n) {
            Expr prod(c);
            for (unsigned s = 0; s < slots; ++s) prod *= s < p ? parts[idx[s]] : dparts[idx[s]];
            total += prod;
        }
        unsigned s = 0;
        while (s < slots && ++idx[s] > n) idx[s++] = 0;
        if (s == slots) break;
    }
    return total;
}

// Numeric algebra over functions of x (at fixed t) with central differences
// standing in for the conformable derivatives.
struct NumericFnAlgebra {
    using value_type = std::function<double(double)>;
    double h = 1e-4;

    [[nodiscard]] value_type zero() const { return [](double) { return 0.0; }; }
    [[nodiscard]] value_type add(value_type a, value_type b) const {
        return [a, b](double x) { return a(x) + b(x); };
    }
    [[nodiscard]] value_type mul(value_type a, value_type b) const {
        return [a, b](double x) { return a(x) * b(x); };
    }
    [[nodiscard]] value_type scale(const Rational& q, value_type a) const {
        const double s = q.to_double();
        return [s, a](double x) { return s * a(x); };
    }
    [[nodiscard]] value_type lift(const Expr& e) const {
        return [e](double x) { return eval_at(e, x); };
    }
    [[nodiscard]] value_type space_deriv(value_type f, OrderParam, const Rational& order) const {
        const double o = order.to_double();
        const double step = h;
        return [f, o, step](double x) { return std::pow(x, 1.0 - o) * (f(x + step) - f(x - step)) / (2.0 * step); };
    }
};

/// T_alpha u + R u + N u - g for the problem's exact solution, with every
/// derivative replaced by a central difference of step h.
inline double fd_pde_residual(const ProblemSpec& p, double x, double t, double h = 1e-4) {
    const double a = p.alpha.to_double();
    auto u_at = [&](double tt) { return [&p, tt](double xx) { return exact_eval(p, xx, tt); }; };
    const double ut = std::pow(t, 1.0 - a) * (exact_eval(p, x, t + h) - exact_eval(p, x, t - h)) / (2.0 * h);
    const NumericFnAlgebra alg{h};
    const auto u = u_at(t);
    const double r = evaluate_operator(p.R, u, alg, p.orders())(x);
    const double n = evaluate_operator(p.N, u, alg, p.orders())(x);
    return ut + r + n - series_eval(p.g, x, t);
}

}  // namespace cfpde::testing
