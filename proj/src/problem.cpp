#include "cfpde/problem.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace cfpde {

namespace {

constexpr std::string_view kDiffusion = R"fpde(# Linear time- and space-fractional diffusion equation
#   T_alpha u = D_x^(2 beta) u,   u(x, 0) = sin(x^beta / beta)
name = "diffusion"
alpha = "3/4"
beta = "1/2"
ic = "sin(x^b/b)"
R = "-Db2(u)"
N = ""
g = "0"
exact = "sin(x^b/b)*exp(-t^a/a)"
)fpde";

constexpr std::string_view kGas = R"fpde(# Nonlinear time- and space-fractional gas dynamics equation
#   T_alpha u + (1/2) D_x^beta (u^2) - u (1 - u) = 0,   u(x, 0) = exp(-x^beta / beta)
# with (1/2) D_x^beta (u^2) written as u * D_x^beta u.
name = "gas"
alpha = "3/4"
beta = "1/2"
ic = "exp(-x^b/b)"
R = "-u"
N = "u*Db(u) + u^2"
g = "0"
exact = "exp(t^a/a - x^b/b)"
)fpde";

// The closed form sums the series geometrically; the denominator is
// t^alpha + 2 alpha.
constexpr std::string_view kAdvection = R"fpde(# Nonlinear fractional advection equation (spatial order alpha)
#   T_alpha u + (1 + u) D_x^alpha u = 0,   u(x, 0) = (x^alpha - alpha) / (2 alpha)
name = "advection"
alpha = "1/2"
beta = "1/2"
ic = "(x^a - a)/(2*a)"
R = "Da(u)"
N = "u*Da(u)"
g = "0"
exact = "(x^a - t^a - a)/(t^a + 2*a)"
)fpde";

struct Field {
    std::string text;
    int line = 0;
    int column = 0;  // column of the first character inside the quotes
};

ParamEnv param_env(const Orders& o) { return ParamEnv{{"a", o.alpha}, {"b", o.beta}}; }

Rational parse_order(const Field& f, const char* key) {
    Rational r;
    try {
        r = Rational::parse(f.text);
    } catch (const std::exception&) {
        throw ParseError(f.line, f.column, std::string(key) + " must be a rational \"p/q\", got \"" + f.text + "\"");
    }
    if (r.sign() <= 0 || r > Rational(1))
        throw ParseError(f.line, f.column, std::string(key) + " = " + r.to_string() + " is out of range (0, 1]");
    return r;
}

void check_exact_tree(const RawExpr& e, const Field& f) {
    using K = RawExpr::Kind;
    if (e.kind() == K::Symbol && e.name() == "u")
        throw ParseError(f.line, f.column, "exact: the unknown u may not appear in a closed form");
    if (e.kind() == K::Call && e.name() != "sin" && e.name() != "cos" && e.name() != "exp")
        throw ParseError(f.line, f.column, "exact: operator " + e.name() + " is not allowed in a closed form");
    switch (e.kind()) {
        case K::Number:
        case K::Symbol: return;
        case K::Neg:
        case K::Call: check_exact_tree(e.operand(), f); return;
        default:
            check_exact_tree(e.lhs(), f);
            check_exact_tree(e.rhs(), f);
    }
}

RawExpr parse_field(const Field& f) { return parse_expression(f.text, f.line, f.column - 1); }

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

// Resolves raw fields against concrete orders and validates the operator split.
void resolve(ProblemSpec& p, const std::map<std::string, Field>& fields) {
    const Orders orders = p.orders();
    const ParamEnv env = param_env(orders);
    auto field = [&](const char* key) -> const Field* {
        auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    };

    const Field* ic = field("ic");
    if (!ic) throw ParseError(0, 0, "missing required key 'ic'");
    if (blank(ic->text)) throw ParseError(ic->line, ic->column, "ic: empty initial condition");
    p.source.ic = parse_field(*ic);
    try {
        p.ic = canonicalize(p.source.ic, env);
    } catch (const ExprError& e) {
        throw ParseError(ic->line, ic->column, std::string("ic: ") + e.what());
    }

    p.source.R.reset();
    p.R = OperatorExpr();
    if (const Field* r = field("R"); r && !blank(r->text)) {
        p.source.R = parse_field(*r);
        try {
            p.R = to_operator(*p.source.R, orders);
        } catch (const OperatorError& e) {
            throw ParseError(r->line, r->column, std::string("R: ") + e.what());
        }
        if (!check_linear(p.R)) throw ParseError(r->line, r->column, "R must be linear in u: " + p.R.to_string());
    }

    p.source.N.reset();
    p.N = OperatorExpr();
    if (const Field* n = field("N"); n && !blank(n->text)) {
        p.source.N = parse_field(*n);
        try {
            p.N = to_operator(*p.source.N, orders);
        } catch (const OperatorError& e) {
            throw ParseError(n->line, n->column, std::string("N: ") + e.what());
        }
        if (!p.N.is_empty() && p.N.low_degree() < 2)
            throw ParseError(n->line, n->column,
                             "N must be strictly nonlinear; move linear and u-free terms to R or g: " +
                                 p.N.to_string());
    }

    p.source.g.reset();
    p.g = TSeries(orders.alpha);
    if (const Field* g = field("g"); g && !blank(g->text)) {
        p.source.g = parse_field(*g);
        try {
            p.g = to_graded_source(*p.source.g, orders);
        } catch (const ExprError& e) {
            throw ParseError(g->line, g->column, std::string("g: ") + e.what());
        }
    }

    p.exact.reset();
    if (const Field* ex = field("exact"); ex && !blank(ex->text)) {
        RawExpr e = parse_field(*ex);
        check_exact_tree(e, *ex);
        p.exact = std::move(e);
    }
}

const std::vector<std::string_view> kKeys{"name", "alpha", "beta", "time_order", "ic", "R", "N", "g", "exact"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    return a.name == b.name && a.alpha == b.alpha && a.beta == b.beta && a.time_order == b.time_order &&
           a.ic == b.ic && a.R == b.R && a.N == b.N && a.g == b.g && a.exact == b.exact;
}

ProblemSpec parse_problem(std::string_view text) {
    std::map<std::string, Field> fields;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Strip a comment that starts outside quotes.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        if (blank(line)) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            const auto col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
            throw ParseError(line_no, col, "expected key = \"value\"");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const int key_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
        if (key.empty()) throw ParseError(line_no, key_col, "missing key before '='");
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw ParseError(line_no, key_col, "unknown key '" + key + "'");
        if (fields.count(key)) throw ParseError(line_no, key_col, "duplicate key '" + key + "'");

        const auto open = line.find_first_not_of(" \t", eq + 1);
        if (open == std::string::npos || line[open] != '"')
            throw ParseError(line_no, static_cast<int>(open == std::string::npos ? line.size() : open) + 1,
                             "value of '" + key + "' must be double-quoted");
        const auto close = line.find('"', open + 1);
        if (close == std::string::npos)
            throw ParseError(line_no, static_cast<int>(line.size()) + 1, "unterminated string for '" + key + "'");
        if (!blank(std::string_view(line).substr(close + 1)))
            throw ParseError(line_no, static_cast<int>(close) + 2, "unexpected text after closing quote");
        fields[key] = Field{line.substr(open + 1, close - open - 1), line_no, static_cast<int>(open) + 2};
    }

    ProblemSpec p;
    if (auto it = fields.find("name"); it != fields.end()) p.name = trim(it->second.text);
    auto alpha = fields.find("alpha");
    if (alpha == fields.end()) throw ParseError(0, 0, "missing required key 'alpha'");
    p.alpha = parse_order(alpha->second, "alpha");
    if (auto beta = fields.find("beta"); beta != fields.end()) p.beta = parse_order(beta->second, "beta");
    if (auto it = fields.find("time_order"); it != fields.end()) {
        const std::string v = trim(it->second.text);
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            v.size() > 3 || std::stoi(v) == 0)
            throw ParseError(it->second.line, it->second.column, "time_order must be a positive integer");
        p.time_order = static_cast<unsigned>(std::stoi(v));
    }
    resolve(p, fields);
    return p;
}

std::string print_problem(const ProblemSpec& p) {
    std::ostringstream os;
    os << "name = \"" << p.name << "\"\n";
    os << "alpha = \"" << p.alpha << "\"\n";
    os << "beta = \"" << p.beta << "\"\n";
    if (p.time_order != 1) os << "time_order = \"" << p.time_order << "\"\n";
    os << "ic = \"" << p.source.ic.to_string() << "\"\n";
    os << "R = \"" << (p.source.R ? p.source.R->to_string() : (p.R.is_empty() ? std::string() : p.R.to_string()))
       << "\"\n";
    os << "N = \"" << (p.source.N ? p.source.N->to_string() : (p.N.is_empty() ? std::string() : p.N.to_string()))
       << "\"\n";
    os << "g = \"" << (p.source.g ? p.source.g->to_string() : std::string("0")) << "\"\n";
    if (p.exact) os << "exact = \"" << p.exact->to_string() << "\"\n";
    return os.str();
}

ProblemSpec with_orders(const ProblemSpec& p, const Rational& alpha, const Rational& beta) {
    ProblemSpec q = p;
    q.alpha = parse_order(Field{alpha.to_string(), 0, 0}, "alpha");
    q.beta = parse_order(Field{beta.to_string(), 0, 0}, "beta");
    std::map<std::string, Field> fields;
    fields["ic"] = Field{p.source.ic.to_string(), 0, 1};
    if (p.source.R) fields["R"] = Field{p.source.R->to_string(), 0, 1};
    if (p.source.N) fields["N"] = Field{p.source.N->to_string(), 0, 1};
    if (p.source.g) fields["g"] = Field{p.source.g->to_string(), 0, 1};
    if (p.exact) fields["exact"] = Field{p.exact->to_string(), 0, 1};
    resolve(q, fields);
    return q;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"diffusion", "gas", "advection"};
    return names;
}

std::string builtin_text(std::string_view name) {
    if (name == "diffusion") return std::string(kDiffusion);
    if (name == "gas") return std::string(kGas);
    if (name == "advection") return std::string(kAdvection);
    throw std::invalid_argument("unknown built-in problem '" + std::string(name) + "'");
}

ProblemSpec builtin(std::string_view name) { return parse_problem(builtin_text(name)); }

ProblemSpec load_problem(const std::string& path_or_name) {
    namespace fs = std::filesystem;
    if (!fs::exists(path_or_name)) {
        const auto& names = builtin_names();
        if (std::find(names.begin(), names.end(), path_or_name) != names.end()) return builtin(path_or_name);
        throw std::runtime_error("no such problem file or built-in: " + path_or_name);
    }
    std::ifstream in(path_or_name);
    if (!in) throw std::runtime_error("cannot read " + path_or_name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

double exact_eval(const ProblemSpec& p, double x, double t) {
    if (!p.exact) throw std::logic_error("problem '" + p.name + "' has no reference solution");
    if (!(x > 0.0)) throw std::domain_error("evaluation point must satisfy x > 0");
    if (t < 0.0) throw std::domain_error("evaluation time must satisfy t >= 0");
    const NumericEnv env{{"x", x}, {"t", t}, {"a", p.alpha.to_double()}, {"b", p.beta.to_double()}};
    return evaluate(*p.exact, env);
}

namespace {

// Polynomial in t with rational exponents and Expr coefficients.
using TPoly = std::map<Rational, Expr>;

TPoly tpoly_add(TPoly a, const TPoly& b, const Rational& sign) {
    for (const auto& [q, c] : b) {
        a[q] += sign * c;
        if (a[q].is_zero()) a.erase(q);
    }
    return a;
}

TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
    TPoly out;
    for (const auto& [qa, ca] : a)
        for (const auto& [qb, cb] : b) {
            auto& slot = out[qa + qb];
            slot += ca * cb;
            if (slot.is_zero()) out.erase(qa + qb);
        }
    return out;
}

TPoly tpoly_const(Expr e) {
    TPoly p;
    if (!e.is_zero()) p.emplace(Rational(0), std::move(e));
    return p;
}

TPoly to_tpoly(const RawExpr& raw, const ParamEnv& env) {
    using K = RawExpr::Kind;
    if (!raw.mentions("t")) return tpoly_const(canonicalize(raw, env));
    switch (raw.kind()) {
        case K::Symbol: return TPoly{{Rational(1), Expr(1)}};
        case K::Neg: return tpoly_add({}, to_tpoly(raw.operand(), env), Rational(-1));
        case K::Add: return tpoly_add(to_tpoly(raw.lhs(), env), to_tpoly(raw.rhs(), env), Rational(1));
        case K::Sub: return tpoly_add(to_tpoly(raw.lhs(), env), to_tpoly(raw.rhs(), env), Rational(-1));
        case K::Mul: return tpoly_mul(to_tpoly(raw.lhs(), env), to_tpoly(raw.rhs(), env));
        case K::Div: {
            if (raw.rhs().mentions("t")) throw ExprError("division by an expression in t");
            return tpoly_mul(to_tpoly(raw.lhs(), env), tpoly_const(reciprocal(canonicalize(raw.rhs(), env))));
        }
        case K::Pow: {
            if (raw.rhs().mentions("t")) throw ExprError("exponent may not depend on t");
            const Expr e = canonicalize(raw.rhs(), env);
            if (!e.is_constant()) throw ExprError("non-rational exponent '" + raw.rhs().to_string() + "'");
            const Rational q = e.constant_value();
            if (raw.lhs().kind() == K::Symbol) {
                if (q.sign() < 0) throw ExprError("negative power of t in source");
                return TPoly{{q, Expr(1)}};
            }
            const auto n = q.to_long();
            if (!n || *n < 0 || *n > 64) throw ExprError("source powers of t-expressions need a small natural exponent");
            TPoly base = to_tpoly(raw.lhs(), env);
            TPoly out{{Rational(0), Expr(1)}};
            for (long i = 0; i < *n; ++i) out = tpoly_mul(out, base);
            return out;
        }
        case K::Call: throw ExprError("function '" + raw.name() + "' of t is not a finite graded source");
        default: break;
    }
    throw ExprError("unsupported source expression '" + raw.to_string() + "'");
}

}  // namespace

TSeries to_graded_source(const RawExpr& raw, const Orders& orders) {
    const TPoly poly = to_tpoly(raw, param_env(orders));
    std::vector<Expr> coeffs;
    for (const auto& [q, c] : poly) {
        const Rational grade = q / orders.alpha;
        const auto k = grade.to_long();
        if (!k || *k < 0)
            throw ExprError("source term with t^(" + q.to_string() + ") is not on the t^(k*alpha) grid for alpha = " +
                            orders.alpha.to_string());
        if (static_cast<std::size_t>(*k) >= coeffs.size()) coeffs.resize(static_cast<std::size_t>(*k) + 1);
        coeffs[static_cast<std::size_t>(*k)] = c;
    }
    return TSeries(orders.alpha, std::move(coeffs));
}

}  // namespace cfpde
