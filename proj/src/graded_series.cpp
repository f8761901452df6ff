#include "cfpde/graded_series.hpp"

#include <algorithm>
#include <cmath>

namespace cfpde {

namespace {

void check_alpha(const Rational& alpha) {
    if (alpha.sign() <= 0 || alpha > Rational(1))
        throw std::invalid_argument("series order alpha must lie in (0, 1], got " + alpha.to_string());
}

void check_same_alpha(const TSeries& a, const TSeries& b) {
    if (a.alpha() != b.alpha())
        throw std::invalid_argument("series with different alpha: " + a.alpha().to_string() + " vs " +
                                    b.alpha().to_string());
}

}  // namespace

TSeries::TSeries(Rational alpha, std::vector<Expr> coeffs) : alpha_(std::move(alpha)), coeffs_(std::move(coeffs)) {
    check_alpha(alpha_);
}

bool TSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Expr& e) { return e.is_zero(); });
}

TSeries TSeries::truncated(std::size_t order) const {
    std::vector<Expr> c(order + 1);
    for (std::size_t k = 0; k <= order && k < coeffs_.size(); ++k) c[k] = coeffs_[k];
    return TSeries(alpha_, std::move(c));
}

TSeries operator+(const TSeries& a, const TSeries& b) {
    check_same_alpha(a, b);
    std::vector<Expr> c(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return TSeries(a.alpha(), std::move(c));
}

TSeries TSeries::operator-() const { return Rational(-1) * *this; }

TSeries operator-(const TSeries& a, const TSeries& b) { return a + (-b); }

TSeries operator*(const Rational& q, const TSeries& s) {
    std::vector<Expr> c;
    c.reserve(s.size());
    for (const auto& e : s.coeffs()) c.push_back(q * e);
    return TSeries(s.alpha(), std::move(c));
}

bool operator==(const TSeries& a, const TSeries& b) {
    if (a.alpha() != b.alpha()) return false;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k)
        if (a.coeff(k) != b.coeff(k)) return false;
    return true;
}

TSeries inv_L_series(const TSeries& s) {
    if (s.empty()) return s;
    std::vector<Expr> c(s.size() + 1);
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Rational weight = Rational(static_cast<long>(k + 1)) * s.alpha();
        c[k + 1] = weight.reciprocal() * s.coeffs()[k];
    }
    return TSeries(s.alpha(), std::move(c));
}

TSeries time_derivative(const TSeries& s) {
    if (s.empty()) return s;
    std::vector<Expr> c(s.size() - 1);
    for (std::size_t k = 0; k + 1 < s.size(); ++k)
        c[k] = (Rational(static_cast<long>(k + 1)) * s.alpha()) * s.coeffs()[k + 1];
    return TSeries(s.alpha(), std::move(c));
}

TSeries cauchy_product(const TSeries& a, const TSeries& b) {
    check_same_alpha(a, b);
    std::vector<Expr> c(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        Expr sum;
        for (std::size_t s = 0; s <= k; ++s) {
            if (s >= a.size() || k - s >= b.size()) continue;
            sum += a.coeffs()[s] * b.coeffs()[k - s];
        }
        c[k] = std::move(sum);
    }
    return TSeries(a.alpha(), std::move(c));
}

TSeries space_derivative(const TSeries& s, const Rational& order) {
    std::vector<Expr> c;
    c.reserve(s.size());
    for (const auto& e : s.coeffs()) c.push_back(conf_deriv(e, order));
    return TSeries(s.alpha(), std::move(c));
}

double series_eval(const TSeries& s, double x, double t) {
    if (!(x > 0.0)) throw std::domain_error("evaluation point must satisfy x > 0");
    if (t < 0.0) throw std::domain_error("evaluation time must satisfy t >= 0");
    const double a = s.alpha().to_double();
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s.coeffs()[k].is_zero()) continue;
        const double weight = k == 0 ? 1.0 : std::pow(t, static_cast<double>(k) * a);
        if (weight == 0.0) continue;
        sum += eval_at(s.coeffs()[k], x) * weight;
    }
    return sum;
}

}  // namespace cfpde
