#include "cfpde/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cfpde {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw fail();

    auto parse_decimal = [&](const std::string& part) -> mpq_class {
        std::size_t i = 0;
        bool negative = false;
        if (i < part.size() && (part[i] == '-' || part[i] == '+')) negative = part[i++] == '-';
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_dot = false;
        for (; i < part.size(); ++i) {
            const char c = part[i];
            if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
                if (seen_dot) ++frac_digits;
            } else {
                throw fail();
            }
        }
        if (digits.empty()) throw fail();
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
        mpq_class q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    };

    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_decimal(s));
    const mpq_class num = parse_decimal(s.substr(0, slash));
    const mpq_class den = parse_decimal(s.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num / den));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

std::optional<long> Rational::to_long() const {
    if (!is_integer() || !value_.get_num().fits_slong_p()) return std::nullopt;
    return value_.get_num().get_si();
}

std::string Rational::to_string() const {
    if (is_integer()) return numerator_str();
    return numerator_str() + "/" + denominator_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(mpq_class(1 / value_));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

Rational Rational::pow(long n) const {
    if (n < 0) return reciprocal().pow(-n);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpq_class(num, den));
}

std::optional<Rational> Rational::pow(const Rational& q) const {
    if (q.is_integer()) {
        auto n = q.to_long();
        if (!n) return std::nullopt;
        if (*n < 0 && is_zero()) return std::nullopt;
        return pow(*n);
    }
    if (is_zero()) return q.sign() > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
    if (sign() < 0) return std::nullopt;
    if (!q.value_.get_den().fits_ulong_p()) return std::nullopt;
    const unsigned long root = q.value_.get_den().get_ui();
    mpz_class num_root, den_root;
    if (mpz_root(num_root.get_mpz_t(), value_.get_num_mpz_t(), root) == 0) return std::nullopt;
    if (mpz_root(den_root.get_mpz_t(), value_.get_den_mpz_t(), root) == 0) return std::nullopt;
    const Rational base(mpq_class(num_root, den_root));
    const mpz_class& exp_num = q.value_.get_num();
    if (!exp_num.fits_slong_p()) return std::nullopt;
    return base.pow(exp_num.get_si());
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

}  // namespace cfpde
