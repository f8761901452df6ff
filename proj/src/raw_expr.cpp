#include "cfpde/raw_expr.hpp"

#include <cmath>
#include <stdexcept>

namespace cfpde {

RawExpr RawExpr::number(Rational value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = std::move(value);
    return RawExpr(std::move(n));
}

RawExpr RawExpr::symbol(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Symbol;
    n->name = std::move(name);
    return RawExpr(std::move(n));
}

RawExpr RawExpr::neg(RawExpr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->operands.push_back(std::move(operand));
    return RawExpr(std::move(n));
}

RawExpr RawExpr::binary(Kind kind, RawExpr lhs, RawExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->operands.push_back(std::move(lhs));
    n->operands.push_back(std::move(rhs));
    return RawExpr(std::move(n));
}

RawExpr RawExpr::call(std::string function, RawExpr argument) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->name = std::move(function);
    n->operands.push_back(std::move(argument));
    return RawExpr(std::move(n));
}

bool RawExpr::mentions(const std::string& symbol) const {
    if (kind() == Kind::Symbol) return name() == symbol;
    for (const auto& op : node_->operands)
        if (op.mentions(symbol)) return true;
    return false;
}

bool operator==(const RawExpr& a, const RawExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.node_->value != b.node_->value || a.node_->name != b.node_->name) return false;
    return a.node_->operands == b.node_->operands;
}

namespace {

// Binding strength used by the printer; mirrors the parser's grammar.
int precedence(RawExpr::Kind k) {
    switch (k) {
        case RawExpr::Kind::Add:
        case RawExpr::Kind::Sub: return 1;
        case RawExpr::Kind::Mul:
        case RawExpr::Kind::Div: return 2;
        case RawExpr::Kind::Neg: return 3;
        case RawExpr::Kind::Pow: return 4;
        default: return 5;
    }
}

std::string wrap_if(bool cond, const std::string& s) { return cond ? "(" + s + ")" : s; }

}  // namespace

std::string RawExpr::to_string() const {
    switch (kind()) {
        case Kind::Number: {
            // Negative or fractional literals are not atoms in the grammar.
            if (value().sign() < 0) return "(" + value().to_string() + ")";
            if (!value().is_integer()) return "(" + value().to_string() + ")";
            return value().to_string();
        }
        case Kind::Symbol: return name();
        case Kind::Call: return name() + "(" + operand().to_string() + ")";
        case Kind::Neg: {
            const auto& o = operand();
            return "-" + wrap_if(precedence(o.kind()) < 4, o.to_string());
        }
        case Kind::Pow: {
            // '^' is right associative and binds tighter than unary minus.
            const bool wrap_l = precedence(lhs().kind()) <= 4;
            const bool wrap_r = precedence(rhs().kind()) < 4;
            return wrap_if(wrap_l, lhs().to_string()) + "^" + wrap_if(wrap_r, rhs().to_string());
        }
        default: {
            const int p = precedence(kind());
            const char* op = kind() == Kind::Add ? " + " : kind() == Kind::Sub ? " - " : kind() == Kind::Mul ? "*" : "/";
            const bool wrap_l = precedence(lhs().kind()) < p;
            const bool wrap_r = precedence(rhs().kind()) <= p;
            return wrap_if(wrap_l, lhs().to_string()) + op + wrap_if(wrap_r, rhs().to_string());
        }
    }
    return {};
}

double evaluate(const RawExpr& e, const NumericEnv& env) {
    using K = RawExpr::Kind;
    switch (e.kind()) {
        case K::Number: return e.value().to_double();
        case K::Symbol: {
            auto it = env.find(e.name());
            if (it == env.end()) throw std::domain_error("unbound symbol '" + e.name() + "'");
            return it->second;
        }
        case K::Neg: return -evaluate(e.operand(), env);
        case K::Add: return evaluate(e.lhs(), env) + evaluate(e.rhs(), env);
        case K::Sub: return evaluate(e.lhs(), env) - evaluate(e.rhs(), env);
        case K::Mul: return evaluate(e.lhs(), env) * evaluate(e.rhs(), env);
        case K::Div: return evaluate(e.lhs(), env) / evaluate(e.rhs(), env);
        case K::Pow: return std::pow(evaluate(e.lhs(), env), evaluate(e.rhs(), env));
        case K::Call: {
            const double v = evaluate(e.operand(), env);
            if (e.name() == "sin") return std::sin(v);
            if (e.name() == "cos") return std::cos(v);
            if (e.name() == "exp") return std::exp(v);
            throw std::domain_error("cannot evaluate '" + e.name() + "' numerically");
        }
    }
    return 0.0;
}

}  // namespace cfpde
