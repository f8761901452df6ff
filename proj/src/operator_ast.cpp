#include "cfpde/operator_ast.hpp"

#include <algorithm>

#include "cfpde/parser.hpp"

namespace cfpde {

OperatorExpr::OperatorExpr() : node_(std::make_shared<const Node>()) {}

OperatorExpr OperatorExpr::unknown() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Unknown;
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::constant(Expr e) {
    if (e.is_zero()) return {};
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->constant = std::move(e);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::space_deriv(OperatorExpr child, unsigned reps, OrderParam order) {
    if (reps == 0) return child;
    if (child.is_empty()) return child;
    if (child.kind() == Kind::SpaceDeriv && child.order_param() == order) {
        reps += child.reps();
        child = OperatorExpr(child.child());
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::SpaceDeriv;
    n->reps = reps;
    n->order = order;
    n->children.push_back(std::move(child));
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scale(Rational factor, OperatorExpr child) {
    if (factor.is_zero() || child.is_empty()) return {};
    if (factor.is_one()) return child;
    if (child.kind() == Kind::Scale) return scale(factor * child.factor(), child.child());
    if (child.kind() == Kind::Const) return constant(factor * child.constant_expr());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Scale;
    n->factor = std::move(factor);
    n->children.push_back(std::move(child));
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::add(std::vector<OperatorExpr> children) {
    std::vector<OperatorExpr> flat;
    for (auto& c : children) {
        if (c.is_empty()) continue;
        if (c.kind() == Kind::Add) {
            flat.insert(flat.end(), c.children().begin(), c.children().end());
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Add;
    n->children = std::move(flat);
    return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::mul(std::vector<OperatorExpr> children) {
    Rational factor(1);
    Expr coefficient(1);
    std::vector<OperatorExpr> rest;
    // Flattens nested products and collects scalars and constant factors.
    auto absorb = [&](auto&& self, const OperatorExpr& c) -> void {
        switch (c.kind()) {
            case Kind::Mul:
                for (const auto& g : c.children()) self(self, g);
                break;
            case Kind::Scale:
                factor *= c.factor();
                self(self, c.child());
                break;
            case Kind::Const:
                coefficient *= c.constant_expr();
                break;
            default:
                if (c.is_empty()) {
                    factor = Rational(0);
                } else {
                    rest.push_back(c);
                }
        }
    };
    for (const auto& c : children) absorb(absorb, c);
    if (factor.is_zero() || coefficient.is_zero()) return {};
    if (coefficient.is_constant()) {
        factor *= coefficient.constant_value();
        coefficient = Expr(1);
    }
    if (rest.empty()) return constant(factor * coefficient);
    if (!(coefficient == Expr(1))) rest.insert(rest.begin(), constant(coefficient));
    OperatorExpr product;
    if (rest.size() == 1) {
        product = rest.front();
    } else {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Mul;
        n->children = std::move(rest);
        product = OperatorExpr(std::move(n));
    }
    return scale(factor, std::move(product));
}

unsigned OperatorExpr::degree() const {
    switch (kind()) {
        case Kind::Unknown: return 1;
        case Kind::Const: return 0;
        case Kind::SpaceDeriv:
        case Kind::Scale: return child().degree();
        case Kind::Add: {
            unsigned d = 0;
            for (const auto& c : children()) d = std::max(d, c.degree());
            return d;
        }
        case Kind::Mul: {
            unsigned d = 0;
            for (const auto& c : children()) d += c.degree();
            return d;
        }
    }
    return 0;
}

unsigned OperatorExpr::low_degree() const {
    switch (kind()) {
        case Kind::Unknown: return 1;
        case Kind::Const: return 0;
        case Kind::SpaceDeriv:
        case Kind::Scale: return child().low_degree();
        case Kind::Add: {
            if (children().empty()) return 0;
            unsigned d = children().front().low_degree();
            for (const auto& c : children()) d = std::min(d, c.low_degree());
            return d;
        }
        case Kind::Mul: {
            unsigned d = 0;
            for (const auto& c : children()) d += c.low_degree();
            return d;
        }
    }
    return 0;
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.reps == y.reps && x.order == y.order && x.factor == y.factor && x.constant == y.constant &&
           x.children == y.children;
}

namespace {

std::string deriv_text(const OperatorExpr& op) {
    std::string inner = op.child().to_string();
    unsigned reps = op.reps();
    if (op.order_param() == OrderParam::Alpha) {
        for (unsigned r = 0; r < reps; ++r) inner = "Da(" + inner + ")";
        return inner;
    }
    for (; reps >= 2; reps -= 2) inner = "Db2(" + inner + ")";
    if (reps == 1) inner = "Db(" + inner + ")";
    return inner;
}

// Product factors and scaled operands: sums need parentheses.
std::string operand_text(const OperatorExpr& op) {
    const std::string s = op.to_string();
    if (op.kind() == OperatorExpr::Kind::Add || op.kind() == OperatorExpr::Kind::Scale) return "(" + s + ")";
    return s;
}

}  // namespace

std::string OperatorExpr::to_string() const {
    switch (kind()) {
        case Kind::Unknown: return "u";
        case Kind::Const: return "(" + constant_expr().to_string() + ")";
        case Kind::SpaceDeriv: return deriv_text(*this);
        case Kind::Scale: {
            const std::string operand = operand_text(child());
            if (factor() == Rational(-1)) return "-" + operand;
            const std::string mag = factor().abs().to_string();
            return (factor().sign() < 0 ? "-" : "") + mag + "*" + operand;
        }
        case Kind::Add: {
            if (children().empty()) return "0";
            std::string s;
            for (std::size_t i = 0; i < children().size(); ++i) {
                const auto& c = children()[i];
                if (i == 0) {
                    s += c.to_string();
                } else if (c.kind() == Kind::Scale && c.factor().sign() < 0) {
                    const OperatorExpr positive = scale(-c.factor(), c.child());
                    s += " - " + (positive.kind() == Kind::Add ? "(" + positive.to_string() + ")" : positive.to_string());
                } else {
                    s += " + " + c.to_string();
                }
            }
            return s;
        }
        case Kind::Mul: {
            std::string s;
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i > 0) s += "*";
                s += operand_text(children()[i]);
            }
            return s;
        }
    }
    return {};
}

namespace {

ParamEnv param_env(const Orders& orders) { return ParamEnv{{"a", orders.alpha}, {"b", orders.beta}}; }

bool has_operator_parts(const RawExpr& raw) {
    if (raw.kind() == RawExpr::Kind::Symbol) return raw.name() == "u";
    if (raw.kind() == RawExpr::Kind::Call && (raw.name() == "Da" || raw.name() == "Db" || raw.name() == "Db2"))
        return true;
    switch (raw.kind()) {
        case RawExpr::Kind::Number:
        case RawExpr::Kind::Symbol: return false;
        case RawExpr::Kind::Neg:
        case RawExpr::Kind::Call: return has_operator_parts(raw.operand());
        default: return has_operator_parts(raw.lhs()) || has_operator_parts(raw.rhs());
    }
}

Expr fold_constant(const RawExpr& raw, const Orders& orders) {
    try {
        return canonicalize(raw, param_env(orders));
    } catch (const ExprError& e) {
        throw OperatorError(e.what());
    }
}

}  // namespace

OperatorExpr to_operator(const RawExpr& raw, const Orders& orders) {
    using K = RawExpr::Kind;
    if (!has_operator_parts(raw)) return OperatorExpr::constant(fold_constant(raw, orders));
    switch (raw.kind()) {
        case K::Symbol: return OperatorExpr::unknown();
        case K::Neg: return OperatorExpr::scale(Rational(-1), to_operator(raw.operand(), orders));
        case K::Add: return OperatorExpr::add({to_operator(raw.lhs(), orders), to_operator(raw.rhs(), orders)});
        case K::Sub:
            return OperatorExpr::add(
                {to_operator(raw.lhs(), orders), OperatorExpr::scale(Rational(-1), to_operator(raw.rhs(), orders))});
        case K::Mul: return OperatorExpr::mul({to_operator(raw.lhs(), orders), to_operator(raw.rhs(), orders)});
        case K::Div: {
            if (has_operator_parts(raw.rhs())) throw OperatorError("cannot divide by an expression in u");
            const Expr den = fold_constant(raw.rhs(), orders);
            if (den.is_zero()) throw OperatorError("division by zero");
            try {
                return OperatorExpr::mul({to_operator(raw.lhs(), orders), OperatorExpr::constant(reciprocal(den))});
            } catch (const ExprError& e) {
                throw OperatorError(e.what());
            }
        }
        case K::Pow: {
            if (has_operator_parts(raw.rhs())) throw OperatorError("exponent may not contain u or derivatives");
            const Expr exponent = fold_constant(raw.rhs(), orders);
            const auto n = exponent.is_constant() ? exponent.constant_value().to_long() : std::nullopt;
            if (!n || *n < 0 || *n > 64)
                throw OperatorError("powers of u need a non-negative integer exponent, got '" + raw.rhs().to_string() +
                                    "'");
            const OperatorExpr base = to_operator(raw.lhs(), orders);
            if (*n == 0) return OperatorExpr::constant(Expr(1));
            return OperatorExpr::mul(std::vector<OperatorExpr>(static_cast<std::size_t>(*n), base));
        }
        case K::Call: {
            if (raw.name() != "Da" && raw.name() != "Db" && raw.name() != "Db2")
                throw OperatorError("function '" + raw.name() + "' cannot be applied to u");
            const OrderParam param = raw.name() == "Da" ? OrderParam::Alpha : OrderParam::Beta;
            const unsigned reps = raw.name() == "Db2" ? 2 : 1;
            OperatorExpr inner = to_operator(raw.operand(), orders);
            if (inner.kind() == OperatorExpr::Kind::Const) {
                Expr e = inner.constant_expr();
                for (unsigned r = 0; r < reps; ++r) e = conf_deriv(e, orders.of(param));
                return OperatorExpr::constant(std::move(e));
            }
            return OperatorExpr::space_deriv(std::move(inner), reps, param);
        }
        default: break;
    }
    throw OperatorError("unsupported operator expression '" + raw.to_string() + "'");
}

OperatorExpr parse_operator(std::string_view text, const Orders& orders) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
    return to_operator(parse_expression(text), orders);
}

bool check_linear(const OperatorExpr& op) { return op.degree() <= 1; }

Expr apply_linear(const OperatorExpr& op, const Expr& u, const Orders& orders) {
    if (!check_linear(op)) throw OperatorError("operator is not linear in u: " + op.to_string());
    return evaluate_operator(op, u, ExprRing{}, orders);
}

namespace {

// Table rules of the reduced differential transform, evaluated on graded
// series holding grades 0..k.
TSeries transform(const OperatorExpr& op, const TSeries& unknown, std::size_t k, const Orders& orders) {
    using K = OperatorExpr::Kind;
    switch (op.kind()) {
        case K::Unknown: return unknown;
        case K::Const: return TSeries(unknown.alpha(), {op.constant_expr()}).truncated(k);
        case K::Scale: return op.factor() * transform(op.child(), unknown, k, orders);
        case K::SpaceDeriv: {
            TSeries s = transform(op.child(), unknown, k, orders);
            for (unsigned r = 0; r < op.reps(); ++r) s = space_derivative(s, orders.of(op.order_param()));
            return s;
        }
        case K::Add: {
            TSeries s = TSeries(unknown.alpha()).truncated(k);
            for (const auto& c : op.children()) s = s + transform(c, unknown, k, orders);
            return s;
        }
        case K::Mul: {
            TSeries s = transform(op.children().front(), unknown, k, orders);
            for (std::size_t i = 1; i < op.children().size(); ++i)
                s = cauchy_product(s, transform(op.children()[i], unknown, k, orders));
            return s;
        }
    }
    return TSeries(unknown.alpha()).truncated(k);
}

}  // namespace

Expr spectrum_coeff(const OperatorExpr& op, std::span<const Expr> spectra, std::size_t k, const Orders& orders) {
    if (spectra.size() <= k)
        throw std::invalid_argument("spectrum_coeff: grade " + std::to_string(k) + " needs " + std::to_string(k + 1) +
                                    " spectra, got " + std::to_string(spectra.size()));
    const TSeries unknown(orders.alpha, std::vector<Expr>(spectra.begin(), spectra.begin() + static_cast<long>(k) + 1));
    return transform(op, unknown, k, orders).coeff(k);
}

}  // namespace cfpde
