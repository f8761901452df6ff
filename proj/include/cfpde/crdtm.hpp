#pragma once

#include <cstddef>

#include "cfpde/cadm.hpp"
#include "cfpde/graded_series.hpp"
#include "cfpde/problem.hpp"

namespace cfpde {

/// Grade-0 spectrum from the initial condition. For first-order problems
/// this is u(x, 0) itself; other time orders throw SolverError.
Expr transform_ic(const ProblemSpec& p);

/// Conformable reduced differential transform. Starting from U_0 = ic,
///
///   alpha (k+1) U_{k+1} = g_k - [R u]_k - [N u]_k,   k = 0..m-1,
///
/// with [.]_k the grade-k transform of each operator. Returns U_0..U_m.
TSeries crdtm_solve(const ProblemSpec& p, std::size_t order = kDefaultOrder);

}  // namespace cfpde
