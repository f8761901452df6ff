#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfpde/expr.hpp"
#include "cfpde/graded_series.hpp"
#include "cfpde/raw_expr.hpp"

namespace cfpde {

/// Concrete fractional orders of a loaded problem.
struct Orders {
    Rational alpha{1};
    Rational beta{1};

    [[nodiscard]] const Rational& of(OrderParam p) const { return p == OrderParam::Alpha ? alpha : beta; }
};

struct OperatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression over the unknown u built from spatial conformable derivatives,
/// sums, products, rational scalings and u-free coefficient expressions.
///
/// The factory functions normalize as they build (nested sums and products
/// flatten, scalings are pulled to the front of products and merged), so
/// trees produced by the parser and by to_string() round trips coincide.
class OperatorExpr {
public:
    enum class Kind { Unknown, SpaceDeriv, Add, Mul, Scale, Const };

    /// The zero operator (an empty sum).
    OperatorExpr();

    static OperatorExpr unknown();
    static OperatorExpr space_deriv(OperatorExpr child, unsigned reps = 1, OrderParam order = OrderParam::Beta);
    static OperatorExpr add(std::vector<OperatorExpr> children);
    static OperatorExpr mul(std::vector<OperatorExpr> children);
    static OperatorExpr scale(Rational factor, OperatorExpr child);
    static OperatorExpr constant(Expr e);

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] const std::vector<OperatorExpr>& children() const { return node_->children; }
    [[nodiscard]] const OperatorExpr& child() const { return node_->children.at(0); }
    [[nodiscard]] unsigned reps() const { return node_->reps; }
    [[nodiscard]] OrderParam order_param() const { return node_->order; }
    [[nodiscard]] const Rational& factor() const { return node_->factor; }
    [[nodiscard]] const Expr& constant_expr() const { return node_->constant; }

    /// True for the zero operator.
    [[nodiscard]] bool is_empty() const { return kind() == Kind::Add && children().empty(); }
    [[nodiscard]] bool mentions_unknown() const { return degree() > 0; }
    /// Highest total degree in u over all monomials.
    [[nodiscard]] unsigned degree() const;
    /// Lowest total degree in u over all summands (0 for the zero operator).
    [[nodiscard]] unsigned low_degree() const;

    /// Text in the problem-file operator syntax; parses back to an equal tree.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

private:
    struct Node {
        Kind kind{Kind::Add};
        std::vector<OperatorExpr> children;
        unsigned reps = 0;
        OrderParam order = OrderParam::Beta;
        Rational factor;
        Expr constant;
    };
    explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Builds an operator from a parsed tree. The symbol u is the unknown; a and b
/// resolve to orders.alpha and orders.beta; Da, Db and Db2 are spatial
/// conformable derivatives of order alpha, beta and beta twice. u-free
/// subtrees fold into constant expressions. Throws OperatorError.
OperatorExpr to_operator(const RawExpr& raw, const Orders& orders);

/// Parses operator text (see to_operator); "" gives the zero operator.
OperatorExpr parse_operator(std::string_view text, const Orders& orders);

/// Linear (or affine) in u: no monomial of degree two or more.
bool check_linear(const OperatorExpr& op);

/// Substitutes u and evaluates the derivatives. Requires check_linear(op).
Expr apply_linear(const OperatorExpr& op, const Expr& u, const Orders& orders);

// ---------------------------------------------------------------------------
// Generic evaluation over an algebra: value_type, zero(), add, mul, scale,
// lift(Expr) and space_deriv(value, param, order).

template <class A>
typename A::value_type evaluate_operator(const OperatorExpr& op, const typename A::value_type& unknown,
                                         const A& alg, const Orders& orders) {
    using K = OperatorExpr::Kind;
    switch (op.kind()) {
        case K::Unknown: return unknown;
        case K::Const: return alg.lift(op.constant_expr());
        case K::Scale: return alg.scale(op.factor(), evaluate_operator(op.child(), unknown, alg, orders));
        case K::SpaceDeriv: {
            auto v = evaluate_operator(op.child(), unknown, alg, orders);
            for (unsigned r = 0; r < op.reps(); ++r) v = alg.space_deriv(v, op.order_param(), orders.of(op.order_param()));
            return v;
        }
        case K::Add: {
            auto acc = alg.zero();
            for (const auto& c : op.children()) acc = alg.add(acc, evaluate_operator(c, unknown, alg, orders));
            return acc;
        }
        case K::Mul: {
            auto acc = evaluate_operator(op.children().front(), unknown, alg, orders);
            for (std::size_t i = 1; i < op.children().size(); ++i)
                acc = alg.mul(acc, evaluate_operator(op.children()[i], unknown, alg, orders));
            return acc;
        }
    }
    return alg.zero();
}

/// Truncated lambda-polynomials over a coefficient ring.
template <CoefficientRing R>
struct LambdaAlgebra {
    using value_type = BasicLambdaPoly<typename R::value_type>;
    R ring;
    std::size_t order = 0;

    [[nodiscard]] value_type zero() const { return value_type{std::vector(order + 1, ring.zero())}; }
    [[nodiscard]] value_type add(const value_type& a, const value_type& b) const {
        value_type out = a;
        for (std::size_t i = 0; i <= order; ++i) out.coeffs[i] = ring.add(a.coeffs[i], b.coeffs[i]);
        return out;
    }
    [[nodiscard]] value_type mul(const value_type& a, const value_type& b) const { return lambda_product(a, b, ring); }
    [[nodiscard]] value_type scale(const Rational& q, const value_type& a) const {
        value_type out = a;
        for (auto& c : out.coeffs) c = ring.scale(q, c);
        return out;
    }
    [[nodiscard]] value_type lift(const Expr& e) const {
        value_type out = zero();
        out.coeffs[0] = ring.lift(e);
        return out;
    }
    [[nodiscard]] value_type space_deriv(const value_type& a, OrderParam p, const Rational& q) const {
        value_type out = a;
        for (auto& c : out.coeffs) c = ring.space_deriv(c, p, q);
        return out;
    }
};

/// N(sum_i lambda^i parts[i]) modulo lambda^(parts.size()). Coefficient i is
/// the Adomian polynomial A_i. Throws std::invalid_argument on empty parts.
template <CoefficientRing R>
BasicLambdaPoly<typename R::value_type> eval_lambda(const OperatorExpr& op,
                                                    std::span<const typename R::value_type> parts, const R& ring,
                                                    const Orders& orders) {
    if (parts.empty()) throw std::invalid_argument("eval_lambda: no parts given");
    LambdaAlgebra<R> alg{ring, parts.size() - 1};
    BasicLambdaPoly<typename R::value_type> u{std::vector<typename R::value_type>(parts.begin(), parts.end())};
    return evaluate_operator(op, u, alg, orders);
}

inline LambdaPoly eval_lambda(const OperatorExpr& op, std::span<const Expr> parts, const Orders& orders) {
    return eval_lambda(op, parts, ExprRing{}, orders);
}

/// Grade-k reduced-differential-transform coefficient of op applied to the
/// unknown whose spectrum starts with `spectra`. Needs spectra.size() > k.
Expr spectrum_coeff(const OperatorExpr& op, std::span<const Expr> spectra, std::size_t k, const Orders& orders);

}  // namespace cfpde
