#include "cfpde/cadm.hpp"

#include "cfpde/adomian.hpp"
#include "cfpde/operator_ast.hpp"

namespace cfpde {

namespace {

void require_first_order(const ProblemSpec& p) {
    if (p.time_order != 1)
        throw SolverError("problem '" + p.name + "' is of order " + std::to_string(p.time_order) +
                          " in time; only first-order problems are supported");
}

// Each component must sit in exactly one grade when there is no source.
void check_alignment(const TSeries& term, std::size_t n) {
    for (std::size_t k = 0; k < term.size(); ++k)
        if (k != n && !term.coeff(k).is_zero())
            throw std::logic_error("component u" + std::to_string(n) + " has content at grade " + std::to_string(k));
}

}  // namespace

CadmSolution cadm_solve(const ProblemSpec& p, std::size_t order) {
    require_first_order(p);
    const Orders orders = p.orders();
    const SeriesRing ring{p.alpha, order};

    // R may be affine; its u-free part acts as an extra source.
    const Expr offset = apply_linear(p.R, Expr(), orders);
    const TSeries source = (p.g - TSeries(p.alpha, {offset})).truncated(order);
    const bool homogeneous = source.is_zero();
    const TSeries r_at_zero = ring.zero();

    CadmSolution sol;
    sol.terms.reserve(order + 1);
    sol.terms.push_back((TSeries(p.alpha, {p.ic}) + inv_L_series(source)).truncated(order));
    if (homogeneous) check_alignment(sol.terms.back(), 0);

    for (std::size_t n = 0; n < order; ++n) {
        const TSeries& un = sol.terms[n];
        const TSeries ru = evaluate_operator(p.R, un, ring, orders) - evaluate_operator(p.R, r_at_zero, ring, orders);
        TSeries an = ring.zero();
        if (!p.N.is_empty()) an = eval_lambda(p.N, std::span<const TSeries>(sol.terms), ring, orders).coeffs[n];
        sol.terms.push_back((-inv_L_series(ru + an)).truncated(order));
        if (homogeneous) check_alignment(sol.terms.back(), n + 1);
    }

    TSeries sum = ring.zero();
    for (const auto& t : sol.terms) sum = sum + t;
    sol.series = sum.truncated(order);
    return sol;
}

std::vector<Expr> residual(const ProblemSpec& p, const TSeries& s) {
    const Orders orders = p.orders();
    const TSeries dt = time_derivative(s);
    std::vector<Expr> out;
    if (s.size() < 2) return out;
    out.reserve(s.size() - 1);
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        Expr r = dt.coeff(k) + spectrum_coeff(p.R, s.coeffs(), k, orders) + spectrum_coeff(p.N, s.coeffs(), k, orders) -
                 p.g.coeff(k);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace cfpde
