#include "cfpde/crdtm.hpp"

#include "cfpde/operator_ast.hpp"

namespace cfpde {

Expr transform_ic(const ProblemSpec& p) {
    if (p.time_order != 1)
        throw SolverError("problem '" + p.name + "' is of order " + std::to_string(p.time_order) +
                          " in time; only first-order problems are supported");
    return p.ic;
}

TSeries crdtm_solve(const ProblemSpec& p, std::size_t order) {
    const Orders orders = p.orders();
    std::vector<Expr> spectra;
    spectra.reserve(order + 1);
    spectra.push_back(transform_ic(p));
    for (std::size_t k = 0; k < order; ++k) {
        const Expr rhs = p.g.coeff(k) - spectrum_coeff(p.R, spectra, k, orders) - spectrum_coeff(p.N, spectra, k, orders);
        const Rational weight = p.alpha * Rational(static_cast<long>(k + 1));
        spectra.push_back(weight.reciprocal() * rhs);
    }
    return TSeries(p.alpha, std::move(spectra));
}

}  // namespace cfpde
