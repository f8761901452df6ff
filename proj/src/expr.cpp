#include "cfpde/expr.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

namespace cfpde {

// Internal access to the term vector; every path that writes terms goes
// through collect() so the canonical invariants hold on exit.
class ExprBuilder {
public:
    static Expr from_terms(std::vector<Term> terms);
    static Expr from_factor(Factor f);
    static const std::vector<Term>& terms(const Expr& e) { return e.terms_; }
};

namespace {

int kind_rank(Factor::Kind k) { return static_cast<int>(k); }

std::strong_ordering compare_factor(const Factor& a, const Factor& b) {
    if (auto c = kind_rank(a.kind) <=> kind_rank(b.kind); c != 0) return c;
    if (a.kind == Factor::Kind::Power) return a.power <=> b.power;
    if (auto c = *a.arg <=> *b.arg; c != 0) return c;
    return a.power <=> b.power;
}

std::strong_ordering compare_monomial(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = compare_factor(a[i], b[i]); c != 0) return c;
    return a.size() <=> b.size();
}

// Factors that merge multiplicatively: all powers of x, all exps, and
// sin/cos sharing an argument.
bool same_group(const Factor& a, const Factor& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Factor::Kind::Power || a.kind == Factor::Kind::Exp) return true;
    return *a.arg == *b.arg;
}

std::optional<Term> normalize_term(Term t) {
    if (t.coeff.is_zero()) return std::nullopt;
    std::vector<Factor> merged;
    merged.reserve(t.factors.size());
    for (auto& f : t.factors) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Factor& m) { return same_group(m, f); });
        if (it == merged.end()) {
            merged.push_back(std::move(f));
        } else if (f.kind == Factor::Kind::Exp) {
            it->arg = std::make_shared<const Expr>(*it->arg + *f.arg);
        } else {
            it->power += f.power;
        }
    }
    std::vector<Factor> kept;
    kept.reserve(merged.size());
    for (auto& f : merged) {
        switch (f.kind) {
            case Factor::Kind::Power:
                if (f.power.is_zero()) continue;
                break;
            case Factor::Kind::Exp:
                if (f.arg->is_zero()) continue;
                break;
            case Factor::Kind::Sin:
                if (f.arg->is_zero()) return std::nullopt;
                break;
            case Factor::Kind::Cos:
                if (f.arg->is_zero()) continue;
                break;
        }
        kept.push_back(std::move(f));
    }
    std::sort(kept.begin(), kept.end(), [](const Factor& a, const Factor& b) { return compare_factor(a, b) < 0; });
    t.factors = std::move(kept);
    return t;
}

std::vector<Term> collect(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return compare_monomial(a.factors, b.factors) < 0; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && compare_monomial(out.back().factors, t.factors) == 0) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    return out;
}

Term multiply_terms(const Term& a, const Term& b) {
    Term t;
    t.coeff = a.coeff * b.coeff;
    t.factors.reserve(a.factors.size() + b.factors.size());
    t.factors.insert(t.factors.end(), a.factors.begin(), a.factors.end());
    t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
    return t;
}

Expr make_function(Factor::Kind kind, const Expr& arg) {
    Factor f;
    f.kind = kind;
    f.power = Rational(1);
    f.arg = std::make_shared<const Expr>(arg);
    return ExprBuilder::from_factor(std::move(f));
}

}  // namespace

Expr ExprBuilder::from_terms(std::vector<Term> terms) {
    std::vector<Term> normalized;
    normalized.reserve(terms.size());
    for (auto& t : terms)
        if (auto n = normalize_term(std::move(t))) normalized.push_back(std::move(*n));
    Expr e;
    e.terms_ = collect(std::move(normalized));
    return e;
}

Expr ExprBuilder::from_factor(Factor f) {
    Term t;
    t.coeff = Rational(1);
    t.factors.push_back(std::move(f));
    return from_terms({std::move(t)});
}

Expr::Expr(Rational c) {
    if (!c.is_zero()) terms_.push_back(Term{std::move(c), {}});
}

Expr Expr::x_pow(const Rational& q) {
    Factor f;
    f.kind = Factor::Kind::Power;
    f.power = q;
    return ExprBuilder::from_factor(std::move(f));
}

bool Expr::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].factors.empty()); }

Rational Expr::constant_value() const {
    if (!is_constant()) throw ExprError("expression is not constant: " + to_string());
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

Expr operator+(const Expr& a, const Expr& b) {
    std::vector<Term> all;
    all.reserve(a.terms_.size() + b.terms_.size());
    all.insert(all.end(), a.terms_.begin(), a.terms_.end());
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    Expr e;
    e.terms_ = collect(std::move(all));
    return e;
}

Expr Expr::operator-() const {
    Expr e = *this;
    for (auto& t : e.terms_) t.coeff = -t.coeff;
    return e;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Rational& q, const Expr& e) {
    if (q.is_zero()) return {};
    Expr r = e;
    for (auto& t : r.terms_) t.coeff *= q;
    return r;
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return a.terms_[0].coeff * b;
    if (b.is_constant()) return b.terms_[0].coeff * a;
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) products.push_back(multiply_terms(ta, tb));
    return ExprBuilder::from_terms(std::move(products));
}

bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare_monomial(a.terms_[i].factors, b.terms_[i].factors); c != 0) return c;
        if (auto c = a.terms_[i].coeff <=> b.terms_[i].coeff; c != 0) return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

Expr sin(const Expr& arg) { return make_function(Factor::Kind::Sin, arg); }
Expr cos(const Expr& arg) { return make_function(Factor::Kind::Cos, arg); }
Expr exp(const Expr& arg) { return make_function(Factor::Kind::Exp, arg); }

Expr pow(const Expr& e, unsigned n) {
    Expr result(1);
    Expr base = e;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

Expr reciprocal(const Expr& e) {
    const auto& terms = e.terms();
    if (terms.size() != 1) throw ExprError("cannot invert a sum or zero: " + e.to_string());
    Term t;
    t.coeff = terms[0].coeff.reciprocal();
    for (const auto& f : terms[0].factors) {
        Factor g = f;
        if (f.kind == Factor::Kind::Power) {
            g.power = -f.power;
        } else if (f.kind == Factor::Kind::Exp) {
            g.arg = std::make_shared<const Expr>(-*f.arg);
        } else {
            throw ExprError("cannot invert trigonometric factor in " + e.to_string());
        }
        t.factors.push_back(std::move(g));
    }
    return ExprBuilder::from_terms({std::move(t)});
}

namespace {

Expr power_rational(const Expr& base, const Rational& q) {
    if (q.is_integer()) {
        const auto n = q.to_long();
        if (!n || *n > 4096 || *n < -4096) throw ExprError("exponent too large: " + q.to_string());
        if (*n >= 0) return pow(base, static_cast<unsigned>(*n));
        return pow(reciprocal(base), static_cast<unsigned>(-*n));
    }
    if (base.is_zero()) {
        if (q.sign() > 0) return {};
        throw ExprError("zero raised to a negative power");
    }
    const auto& terms = base.terms();
    if (terms.size() != 1)
        throw ExprError("fractional power of a sum is outside the expression class: (" + base.to_string() + ")^" +
                        q.to_string());
    const auto coeff = terms[0].coeff.pow(q);
    if (!coeff)
        throw ExprError("coefficient " + terms[0].coeff.to_string() + " has no rational power " + q.to_string());
    Term t;
    t.coeff = *coeff;
    for (const auto& f : terms[0].factors) {
        Factor g = f;
        if (f.kind == Factor::Kind::Power) {
            g.power = f.power * q;
        } else if (f.kind == Factor::Kind::Exp) {
            g.arg = std::make_shared<const Expr>(q * *f.arg);
        } else {
            throw ExprError("fractional power of a trigonometric factor in " + base.to_string());
        }
        t.factors.push_back(std::move(g));
    }
    return ExprBuilder::from_terms({std::move(t)});
}

}  // namespace

Expr canonicalize(const RawExpr& raw, const ParamEnv& params) {
    using K = RawExpr::Kind;
    switch (raw.kind()) {
        case K::Number: return Expr(raw.value());
        case K::Symbol: {
            if (raw.name() == "x") return Expr::x();
            if (auto it = params.find(raw.name()); it != params.end()) return Expr(it->second);
            throw ExprError("unexpected symbol '" + raw.name() + "'");
        }
        case K::Neg: return -canonicalize(raw.operand(), params);
        case K::Add: return canonicalize(raw.lhs(), params) + canonicalize(raw.rhs(), params);
        case K::Sub: return canonicalize(raw.lhs(), params) - canonicalize(raw.rhs(), params);
        case K::Mul: return canonicalize(raw.lhs(), params) * canonicalize(raw.rhs(), params);
        case K::Div: {
            const Expr den = canonicalize(raw.rhs(), params);
            if (den.is_zero()) throw ExprError("division by zero");
            return canonicalize(raw.lhs(), params) * reciprocal(den);
        }
        case K::Pow: {
            const Expr exponent = canonicalize(raw.rhs(), params);
            if (!exponent.is_constant())
                throw ExprError("non-rational exponent '" + raw.rhs().to_string() + "'");
            return power_rational(canonicalize(raw.lhs(), params), exponent.constant_value());
        }
        case K::Call: {
            const Expr arg = canonicalize(raw.operand(), params);
            if (raw.name() == "sin") return sin(arg);
            if (raw.name() == "cos") return cos(arg);
            if (raw.name() == "exp") return exp(arg);
            throw ExprError("unknown function '" + raw.name() + "'");
        }
    }
    return {};
}

namespace {

Expr factor_derivative(const Factor& f) {
    switch (f.kind) {
        case Factor::Kind::Power:
            return f.power * Expr::x_pow(f.power - Rational(1));
        case Factor::Kind::Exp:
            return ExprBuilder::from_factor(f) * diff(*f.arg);
        case Factor::Kind::Sin:
        case Factor::Kind::Cos: {
            const bool is_sin = f.kind == Factor::Kind::Sin;
            Factor rest = f;
            rest.power = f.power - Rational(1);
            Expr lowered = rest.power.is_zero() ? Expr(1) : ExprBuilder::from_factor(rest);
            const Expr other = is_sin ? cos(*f.arg) : sin(*f.arg);
            const Rational sign = is_sin ? Rational(1) : Rational(-1);
            return (sign * f.power) * (lowered * other * diff(*f.arg));
        }
    }
    return {};
}

}  // namespace

Expr diff(const Expr& e) {
    Expr result;
    for (const auto& t : e.terms()) {
        for (std::size_t i = 0; i < t.factors.size(); ++i) {
            Term others;
            others.coeff = t.coeff;
            for (std::size_t j = 0; j < t.factors.size(); ++j)
                if (j != i) others.factors.push_back(t.factors[j]);
            result += ExprBuilder::from_terms({std::move(others)}) * factor_derivative(t.factors[i]);
        }
    }
    return result;
}

Expr conf_deriv(const Expr& e, const Rational& order) {
    if (order.sign() <= 0 || order > Rational(1))
        throw ExprError("conformable derivative order must lie in (0, 1], got " + order.to_string());
    return Expr::x_pow(Rational(1) - order) * diff(e);
}

double eval_at(const Expr& e, double x) {
    if (!(x > 0.0)) throw std::domain_error("evaluation point must satisfy x > 0");
    double sum = 0.0;
    for (const auto& t : e.terms()) {
        double v = t.coeff.to_double();
        for (const auto& f : t.factors) {
            switch (f.kind) {
                case Factor::Kind::Power: v *= std::pow(x, f.power.to_double()); break;
                case Factor::Kind::Exp: v *= std::exp(eval_at(*f.arg, x)); break;
                case Factor::Kind::Sin: v *= std::pow(std::sin(eval_at(*f.arg, x)), f.power.to_double()); break;
                case Factor::Kind::Cos: v *= std::pow(std::cos(eval_at(*f.arg, x)), f.power.to_double()); break;
            }
        }
        sum += v;
    }
    return sum;
}

Equivalence equivalent(const Expr& a, const Expr& b) {
    if (a == b) return Equivalence::Structural;
    if ((a - b).is_zero()) return Equivalence::Symbolic;
    std::mt19937_64 rng(0x5eed'c0ffeeULL);
    std::uniform_real_distribution<double> dist(0.1, 3.0);
    for (int i = 0; i < 16; ++i) {
        const double x = dist(rng);
        const double va = eval_at(a, x);
        const double vb = eval_at(b, x);
        if (!std::isfinite(va) || !std::isfinite(vb)) return Equivalence::Different;
        if (std::abs(va - vb) > 1e-10 * (1.0 + std::abs(va))) return Equivalence::Different;
    }
    return Equivalence::NumericProbable;
}

const char* to_string(Equivalence e) {
    switch (e) {
        case Equivalence::Structural: return "structural";
        case Equivalence::Symbolic: return "symbolic";
        case Equivalence::NumericProbable: return "numeric-probable";
        case Equivalence::Different: return "different";
    }
    return "?";
}

namespace {

std::string exponent_text(const Rational& q) {
    if (q.is_integer() && q.sign() > 0) return q.to_string();
    return "(" + q.to_string() + ")";
}

std::string factor_text(const Factor& f) {
    switch (f.kind) {
        case Factor::Kind::Power:
            return f.power.is_one() ? "x" : "x^" + exponent_text(f.power);
        case Factor::Kind::Exp:
            return "exp(" + f.arg->to_string() + ")";
        case Factor::Kind::Sin:
        case Factor::Kind::Cos: {
            std::string s = (f.kind == Factor::Kind::Sin ? "sin(" : "cos(") + f.arg->to_string() + ")";
            if (!f.power.is_one()) s += "^" + exponent_text(f.power);
            return s;
        }
    }
    return {};
}

}  // namespace

std::string Expr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        const Rational mag = t.coeff.abs();
        if (first) {
            if (t.coeff.sign() < 0) os << "-";
        } else {
            os << (t.coeff.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (t.factors.empty() || !mag.is_one()) {
            os << mag.to_string();
            need_star = true;
        }
        for (const auto& f : t.factors) {
            if (need_star) os << "*";
            os << factor_text(f);
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

}  // namespace cfpde
