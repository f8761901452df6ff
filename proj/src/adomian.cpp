#include "cfpde/adomian.hpp"

#include <algorithm>
#include <sstream>

namespace cfpde {

bool operator<(const Atom& a, const Atom& b) {
    if (a.derivs.size() != b.derivs.size()) return a.derivs.size() < b.derivs.size();
    if (a.derivs != b.derivs) return a.derivs < b.derivs;
    return a.index < b.index;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].first < b[i].first) return true;
        if (b[i].first < a[i].first) return false;
        // Higher powers first: u0^2 before u0*Db(u0).
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (const auto& [atom, e] : b) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == atom; });
        if (it == out.end()) {
            out.emplace_back(atom, e);
        } else {
            it->second += e;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

std::string atom_text(const Atom& a) {
    std::string s = "u" + std::to_string(a.index);
    std::size_t i = 0;
    while (i < a.derivs.size()) {
        if (a.derivs[i] == OrderParam::Beta && i + 1 < a.derivs.size() && a.derivs[i + 1] == OrderParam::Beta) {
            s = "Db2(" + s + ")";
            i += 2;
        } else {
            s = (a.derivs[i] == OrderParam::Beta ? "Db(" : "Da(") + s + ")";
            ++i;
        }
    }
    return s;
}

}  // namespace

void SymPoly::accumulate(const Monomial& m, const Expr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymPoly SymPoly::atom(std::size_t index) {
    SymPoly p;
    p.terms_.emplace(Monomial{{Atom{index, {}}, 1U}}, Expr(1));
    return p;
}

SymPoly SymPoly::constant(const Expr& e) {
    SymPoly p;
    p.accumulate({}, e);
    return p;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
    SymPoly out = a;
    for (const auto& [m, c] : b.terms_) out.accumulate(m, c);
    return out;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
    SymPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.accumulate(multiply(ma, mb), ca * cb);
    return out;
}

SymPoly operator*(const Rational& q, const SymPoly& p) {
    SymPoly out;
    for (const auto& [m, c] : p.terms_) out.accumulate(m, q * c);
    return out;
}

SymPoly SymPoly::derivative(OrderParam p, const Rational& order) const {
    SymPoly out;
    for (const auto& [m, c] : terms_) {
        out.accumulate(m, conf_deriv(c, order));
        for (std::size_t i = 0; i < m.size(); ++i) {
            Monomial rest = m;
            const unsigned e = rest[i].second;
            Atom d = rest[i].first;
            d.derivs.push_back(p);
            if (e == 1) {
                rest.erase(rest.begin() + static_cast<long>(i));
            } else {
                rest[i].second = e - 1;
            }
            out.accumulate(multiply(rest, Monomial{{d, 1U}}), Rational(static_cast<long>(e)) * c);
        }
    }
    return out;
}

std::string SymPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coeff;
        bool negative = false;
        if (c.is_constant()) {
            const Rational v = c.constant_value();
            negative = v.sign() < 0;
            if (!v.abs().is_one() || m.empty()) coeff = v.abs().to_string();
        } else {
            const bool plain = c.terms().size() == 1 && c.terms()[0].coeff.sign() > 0;
            coeff = plain ? c.to_string() : "(" + c.to_string() + ")";
        }
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (!coeff.empty()) {
            os << coeff;
            need_star = true;
        }
        for (const auto& [atom, e] : m) {
            if (need_star) os << "*";
            os << atom_text(atom);
            if (e != 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

Expr SymPoly::substitute(std::span<const Expr> parts, const Orders& orders) const {
    Expr total;
    for (const auto& [m, c] : terms_) {
        Expr term = c;
        for (const auto& [atom, e] : m) {
            if (atom.index >= parts.size()) throw std::out_of_range("substitute: missing component u" + std::to_string(atom.index));
            Expr v = parts[atom.index];
            for (OrderParam p : atom.derivs) v = conf_deriv(v, orders.of(p));
            term *= pow(v, e);
        }
        total += term;
    }
    return total;
}

std::vector<Expr> adomian_polynomials(const OperatorExpr& n_op, std::span<const Expr> parts, const Orders& orders) {
    return eval_lambda(n_op, parts, ExprRing{}, orders).coeffs;
}

std::vector<SymPoly> adomian_symbolic(const OperatorExpr& n_op, std::size_t order, const Orders& orders) {
    std::vector<SymPoly> parts;
    parts.reserve(order + 1);
    for (std::size_t i = 0; i <= order; ++i) parts.push_back(SymPoly::atom(i));
    return eval_lambda(n_op, std::span<const SymPoly>(parts), SymRing{}, orders).coeffs;
}

}  // namespace cfpde
