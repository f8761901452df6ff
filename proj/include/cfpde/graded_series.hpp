#pragma once

#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cfpde/expr.hpp"
#include "cfpde/rational.hpp"

namespace cfpde {

/// Truncated t-graded series  sum_k coeffs[k](x) * t^(k*alpha)  anchored at t = 0.
class TSeries {
public:
    TSeries() : alpha_(1) {}
    explicit TSeries(Rational alpha, std::vector<Expr> coeffs = {});

    [[nodiscard]] const Rational& alpha() const { return alpha_; }
    [[nodiscard]] const std::vector<Expr>& coeffs() const { return coeffs_; }
    [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
    [[nodiscard]] bool empty() const { return coeffs_.empty(); }
    /// Coefficient of grade k; zero past the stored range.
    [[nodiscard]] Expr coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Expr(); }
    /// True when every stored coefficient is zero.
    [[nodiscard]] bool is_zero() const;

    /// Copy keeping grades 0..order, padding with zeros if needed.
    [[nodiscard]] TSeries truncated(std::size_t order) const;

    friend TSeries operator+(const TSeries& a, const TSeries& b);
    friend TSeries operator-(const TSeries& a, const TSeries& b);
    friend TSeries operator*(const Rational& q, const TSeries& s);
    TSeries operator-() const;

    friend bool operator==(const TSeries& a, const TSeries& b);

private:
    Rational alpha_;
    std::vector<Expr> coeffs_;
};

/// Inverse of the conformable time derivative anchored at 0:
/// c(x) t^(k alpha)  ->  c(x) t^((k+1) alpha) / ((k+1) alpha).
/// The result has one more grade than the input (an empty series stays empty).
TSeries inv_L_series(const TSeries& s);

/// Grade-level conformable time derivative: coefficient k becomes
/// alpha (k+1) coeffs[k+1]. Left inverse of inv_L_series.
TSeries time_derivative(const TSeries& s);

/// Grade-wise convolution. Missing grades of the shorter operand count as
/// zero and the result keeps max(a.size(), b.size()) grades.
/// Throws std::invalid_argument when the alphas differ.
TSeries cauchy_product(const TSeries& a, const TSeries& b);

/// Coefficient-wise conformable space derivative of the given order.
TSeries space_derivative(const TSeries& s, const Rational& order);

/// sum_k eval_at(coeffs[k], x) * t^(k alpha); x > 0, t >= 0.
double series_eval(const TSeries& s, double x, double t);

// ---------------------------------------------------------------------------
// Truncated polynomials in the bookkeeping parameter lambda.

/// Which problem parameter sets the order of a spatial conformable derivative.
enum class OrderParam { Alpha, Beta };

/// Arithmetic needed to evaluate operator trees over a coefficient domain.
/// space_deriv receives both the parameter label and its bound value.
template <class R>
concept CoefficientRing = requires(const R r, const typename R::value_type& a, const Rational& q, const Expr& e,
                                   OrderParam p) {
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.scale(q, a) } -> std::convertible_to<typename R::value_type>;
    { r.lift(e) } -> std::convertible_to<typename R::value_type>;
    { r.space_deriv(a, p, q) } -> std::convertible_to<typename R::value_type>;
};

/// Expressions in x.
struct ExprRing {
    using value_type = Expr;
    [[nodiscard]] Expr zero() const { return {}; }
    [[nodiscard]] Expr add(const Expr& a, const Expr& b) const { return a + b; }
    [[nodiscard]] Expr mul(const Expr& a, const Expr& b) const { return a * b; }
    [[nodiscard]] Expr scale(const Rational& q, const Expr& a) const { return q * a; }
    [[nodiscard]] Expr lift(const Expr& e) const { return e; }
    [[nodiscard]] Expr space_deriv(const Expr& a, OrderParam, const Rational& order) const { return conf_deriv(a, order); }
};

/// Graded series truncated at a fixed order; products are Cauchy products.
struct SeriesRing {
    using value_type = TSeries;
    Rational alpha;
    std::size_t order = 0;

    [[nodiscard]] TSeries zero() const { return TSeries(alpha).truncated(order); }
    [[nodiscard]] TSeries add(const TSeries& a, const TSeries& b) const { return (a + b).truncated(order); }
    [[nodiscard]] TSeries mul(const TSeries& a, const TSeries& b) const {
        return cauchy_product(a.truncated(order), b.truncated(order));
    }
    [[nodiscard]] TSeries scale(const Rational& q, const TSeries& a) const { return (q * a).truncated(order); }
    [[nodiscard]] TSeries lift(const Expr& e) const { return TSeries(alpha, {e}).truncated(order); }
    [[nodiscard]] TSeries space_deriv(const TSeries& a, OrderParam, const Rational& o) const {
        return space_derivative(a, o).truncated(order);
    }
};

static_assert(CoefficientRing<ExprRing>);
static_assert(CoefficientRing<SeriesRing>);

/// sum_i coeffs[i] lambda^i computed modulo lambda^(order+1).
template <class C>
struct BasicLambdaPoly {
    std::vector<C> coeffs;

    [[nodiscard]] std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    friend bool operator==(const BasicLambdaPoly&, const BasicLambdaPoly&) = default;
};

using LambdaPoly = BasicLambdaPoly<Expr>;

/// Product in the quotient ring modulo lambda^(m+1); both operands must have
/// the same truncation order m.
template <CoefficientRing R>
BasicLambdaPoly<typename R::value_type> lambda_product(const BasicLambdaPoly<typename R::value_type>& a,
                                                       const BasicLambdaPoly<typename R::value_type>& b,
                                                       const R& ring) {
    if (a.coeffs.size() != b.coeffs.size())
        throw std::invalid_argument("lambda_product: operands have different truncation orders");
    BasicLambdaPoly<typename R::value_type> out;
    out.coeffs.assign(a.coeffs.size(), ring.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; i + j < b.coeffs.size(); ++j)
            out.coeffs[i + j] = ring.add(out.coeffs[i + j], ring.mul(a.coeffs[i], b.coeffs[j]));
    return out;
}

inline LambdaPoly lambda_product(const LambdaPoly& a, const LambdaPoly& b) {
    return lambda_product(a, b, ExprRing{});
}

}  // namespace cfpde
