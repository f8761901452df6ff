#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cfpde/rational.hpp"

namespace cfpde {

/// Uncanonicalized expression tree as produced by the parser. Leaves are
/// rational literals or named symbols (x, t, a, b, u); calls carry a function
/// name (sin, cos, exp, Da, Db, Db2) and one argument.
class RawExpr {
public:
    enum class Kind { Number, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };

    static RawExpr number(Rational value);
    static RawExpr symbol(std::string name);
    static RawExpr neg(RawExpr operand);
    static RawExpr binary(Kind kind, RawExpr lhs, RawExpr rhs);
    static RawExpr call(std::string function, RawExpr argument);

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] const Rational& value() const { return node_->value; }
    /// Symbol name or called function name.
    [[nodiscard]] const std::string& name() const { return node_->name; }
    [[nodiscard]] const RawExpr& lhs() const { return node_->operands.at(0); }
    [[nodiscard]] const RawExpr& rhs() const { return node_->operands.at(1); }
    [[nodiscard]] const RawExpr& operand() const { return node_->operands.at(0); }

    /// True if the symbol appears anywhere in the tree.
    [[nodiscard]] bool mentions(const std::string& symbol) const;

    /// Text that parses back to a structurally identical tree.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const RawExpr& a, const RawExpr& b);

private:
    struct Node {
        Kind kind{Kind::Number};
        Rational value;
        std::string name;
        std::vector<RawExpr> operands;
    };
    explicit RawExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Symbol bindings for floating evaluation.
using NumericEnv = std::map<std::string, double, std::less<>>;

/// Floating evaluation of a tree built from numbers, bound symbols, the
/// arithmetic operators and sin/cos/exp. Throws std::domain_error for unbound
/// symbols or unsupported calls.
double evaluate(const RawExpr& e, const NumericEnv& env);

}  // namespace cfpde
