#pragma once

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfpde/rational.hpp"
#include "cfpde/raw_expr.hpp"

namespace cfpde {

class Expr;

/// One multiplicative factor of a term: x^q, exp(arg), sin(arg)^n or cos(arg)^n.
struct Factor {
    enum class Kind { Power, Exp, Sin, Cos };

    Kind kind{Kind::Power};
    /// Exponent of x for Power; multiplicity for Sin/Cos; always 1 for Exp.
    Rational power;
    /// Function argument; null for Power.
    std::shared_ptr<const Expr> arg;
};

/// coeff * f1 * f2 * ... with factors in canonical order.
struct Term {
    Rational coeff;
    std::vector<Factor> factors;
};

/// Canonical symbolic expression in the single spatial variable x.
///
/// A value is a sum of terms with non-zero rational coefficients. Like terms
/// are merged, powers of x combine, exp(a)*exp(b) becomes exp(a+b), and terms
/// and factors follow a fixed total order (powers of x first by ascending
/// exponent, then exp, sin, cos ordered by their arguments). Two canonical
/// values that compare equal therefore denote the same function; the converse
/// does not hold in general (there are no trigonometric identities).
class Expr {
public:
    Expr() = default;  // zero
    Expr(Rational c);  // NOLINT(google-explicit-constructor)
    Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Expr x() { return x_pow(Rational(1)); }
    static Expr x_pow(const Rational& q);

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    /// Value of a constant expression (zero included).
    [[nodiscard]] Rational constant_value() const;
    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

    [[nodiscard]] std::string to_string() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(const Rational& q, const Expr& e);
    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

    friend class ExprBuilder;

private:
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

Expr sin(const Expr& arg);
Expr cos(const Expr& arg);
Expr exp(const Expr& arg);
/// e^n for a non-negative integer n.
Expr pow(const Expr& e, unsigned n);
/// 1/e for single-term expressions whose factors are powers of x or exp.
/// Throws ExprError otherwise.
Expr reciprocal(const Expr& e);

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rational bindings for parameter symbols (a, b) used by canonicalize.
using ParamEnv = std::map<std::string, Rational, std::less<>>;

/// Builds the canonical form of a raw tree over constants, x, +, -, *, /,
/// rational powers, sin, cos and exp. Symbols listed in `params` are replaced
/// by their values. Throws ExprError for non-rational exponents, unknown
/// symbols or functions, and divisions or roots that leave the class.
Expr canonicalize(const RawExpr& raw, const ParamEnv& params = {});

/// d/dx.
Expr diff(const Expr& e);

/// Conformable derivative x^(1-order) * d/dx for order in (0, 1].
Expr conf_deriv(const Expr& e, const Rational& order);

/// Floating evaluation at x > 0; throws std::domain_error for x <= 0.
double eval_at(const Expr& e, double x);

enum class Equivalence { Structural, Symbolic, NumericProbable, Different };

/// Equality test: structural identity, then a zero difference, then a
/// numeric probe at 16 fixed pseudo-random points in (0.1, 3).
Equivalence equivalent(const Expr& a, const Expr& b);

inline bool is_equivalent(Equivalence e) { return e != Equivalence::Different; }
const char* to_string(Equivalence e);

}  // namespace cfpde
