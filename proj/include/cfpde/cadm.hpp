#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cfpde/graded_series.hpp"
#include "cfpde/problem.hpp"

namespace cfpde {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default truncation order (the seventh iterate).
inline constexpr std::size_t kDefaultOrder = 7;

struct CadmSolution {
    /// Grade-k coefficients of u_0 + ... + u_m.
    TSeries series;
    /// The decomposition components u_0..u_m, each truncated at grade m.
    std::vector<TSeries> terms;
};

/// Conformable Adomian decomposition:
///
///   u_0     = ic + Linv(g)
///   u_{n+1} = -Linv(R u_n) - Linv(A_n),
///
/// where Linv integrates against xi^(alpha-1) from 0 and A_n are the Adomian
/// polynomials of N. Throws SolverError for problems that are not first order
/// in time.
CadmSolution cadm_solve(const ProblemSpec& p, std::size_t order = kDefaultOrder);

/// Grade-k coefficients, k = 0..m-1, of  T_alpha u + R u + N u - g  for the
/// order-m series s. All zero when s solves the problem to order m.
std::vector<Expr> residual(const ProblemSpec& p, const TSeries& s);

}  // namespace cfpde
