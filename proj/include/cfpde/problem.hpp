#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfpde/expr.hpp"
#include "cfpde/graded_series.hpp"
#include "cfpde/operator_ast.hpp"
#include "cfpde/parser.hpp"
#include "cfpde/raw_expr.hpp"

namespace cfpde {

/// One conformable fractional PDE in the split form
///
///   T_alpha u + R(u) + N(u) = g(x, t),   u(x, 0) = ic(x),
///
/// with alpha and beta bound to concrete rationals.
struct ProblemSpec {
    std::string name = "unnamed";
    Rational alpha{1};
    Rational beta{1};
    /// Order of the time derivative; only first-order problems are solvable.
    unsigned time_order = 1;
    Expr ic;
    OperatorExpr R;
    OperatorExpr N;
    /// Source term on the t^(k alpha) grid.
    TSeries g;
    /// Closed-form reference in x, t, a, b, if known.
    std::optional<RawExpr> exact;

    /// Parsed text of each field, kept with a and b symbolic so the problem
    /// can be printed and rebound to other orders.
    struct Source {
        RawExpr ic = RawExpr::number(Rational(0));
        std::optional<RawExpr> R, N, g;
    } source;

    [[nodiscard]] Orders orders() const { return Orders{alpha, beta}; }
    [[nodiscard]] bool has_exact() const { return exact.has_value(); }

    /// Compares the resolved problem (name, orders, ic, R, N, g, exact).
    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b);
};

/// Parses the flat `key = "value"` problem format. Throws ParseError with the
/// offending line and column.
ProblemSpec parse_problem(std::string_view text);

/// Problem text that parse_problem maps back to an equal ProblemSpec.
std::string print_problem(const ProblemSpec& p);

/// Re-resolves every field with new orders. Throws ParseError (line 0) if a
/// field leaves the supported class under the new orders.
ProblemSpec with_orders(const ProblemSpec& p, const Rational& alpha, const Rational& beta);

/// Names accepted by builtin(): diffusion, gas, advection.
const std::vector<std::string>& builtin_names();

/// Problem text of a built-in example.
std::string builtin_text(std::string_view name);

/// Built-in example problem. Throws std::invalid_argument for unknown names.
ProblemSpec builtin(std::string_view name);

/// Reads a problem file, or a built-in when `path_or_name` names one.
ProblemSpec load_problem(const std::string& path_or_name);

/// Floating value of the exact solution. Throws std::logic_error when the
/// problem carries no reference solution.
double exact_eval(const ProblemSpec& p, double x, double t);

/// Converts a source expression in x and t to a graded series; every power
/// of t must be a non-negative integer multiple of alpha.
TSeries to_graded_source(const RawExpr& raw, const Orders& orders);

}  // namespace cfpde
