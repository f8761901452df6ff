#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfpde/expr.hpp"
#include "cfpde/graded_series.hpp"
#include "cfpde/operator_ast.hpp"

namespace cfpde {

/// Symbol u_i, possibly under spatial derivatives (applied innermost first).
struct Atom {
    std::size_t index = 0;
    std::vector<OrderParam> derivs;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Plain atoms before derivative atoms, then by index.
bool operator<(const Atom& a, const Atom& b);

/// Sorted product of atom powers.
using Monomial = std::vector<std::pair<Atom, unsigned>>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial in the atoms with Expr coefficients, used to list Adomian
/// polynomials in terms of the unevaluated components u_0, u_1, ...
class SymPoly {
public:
    SymPoly() = default;
    static SymPoly atom(std::size_t index);
    static SymPoly constant(const Expr& e);

    [[nodiscard]] const std::map<Monomial, Expr, MonomialLess>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    /// E.g. "u0^2 + u0*Db(u0)".
    [[nodiscard]] std::string to_string() const;

    /// Replaces u_i by parts[i] and evaluates the derivatives.
    [[nodiscard]] Expr substitute(std::span<const Expr> parts, const Orders& orders) const;

    friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
    friend SymPoly operator*(const Rational& q, const SymPoly& p);
    friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

    /// Leibniz rule; coefficients are differentiated with the bound order.
    [[nodiscard]] SymPoly derivative(OrderParam p, const Rational& order) const;

private:
    void accumulate(const Monomial& m, const Expr& c);
    std::map<Monomial, Expr, MonomialLess> terms_;
};

struct SymRing {
    using value_type = SymPoly;
    [[nodiscard]] SymPoly zero() const { return {}; }
    [[nodiscard]] SymPoly add(const SymPoly& a, const SymPoly& b) const { return a + b; }
    [[nodiscard]] SymPoly mul(const SymPoly& a, const SymPoly& b) const { return a * b; }
    [[nodiscard]] SymPoly scale(const Rational& q, const SymPoly& a) const { return q * a; }
    [[nodiscard]] SymPoly lift(const Expr& e) const { return SymPoly::constant(e); }
    [[nodiscard]] SymPoly space_deriv(const SymPoly& a, OrderParam p, const Rational& q) const {
        return a.derivative(p, q);
    }
};

static_assert(CoefficientRing<SymRing>);

/// Adomian polynomials A_0..A_m of n_op for concrete components u_0..u_m:
/// the lambda^i coefficients of N(sum_i lambda^i u_i).
std::vector<Expr> adomian_polynomials(const OperatorExpr& n_op, std::span<const Expr> parts, const Orders& orders);

/// The same polynomials in terms of symbolic components u_0..u_order.
std::vector<SymPoly> adomian_symbolic(const OperatorExpr& n_op, std::size_t order, const Orders& orders);

}  // namespace cfpde
