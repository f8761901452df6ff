#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cfpde {

/// Exact rational number in lowest terms with arbitrary-precision numerator
/// and denominator. The denominator is always positive.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(mpq_class value);

    /// Parses "p", "-p", "p/q" or a finite decimal such as "0.25".
    /// Throws std::invalid_argument on malformed input or a zero denominator.
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] bool is_one() const { return value_ == 1; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] int sign() const { return sgn(value_); }

    [[nodiscard]] std::string numerator_str() const;
    [[nodiscard]] std::string denominator_str() const;
    /// Integer value; only meaningful when is_integer() and it fits in a long.
    [[nodiscard]] std::optional<long> to_long() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational reciprocal() const;
    /// this^n for integer n (negative n requires a non-zero base).
    [[nodiscard]] Rational pow(long n) const;
    /// Exact this^q when the result is rational, otherwise nullopt.
    [[nodiscard]] std::optional<Rational> pow(const Rational& q) const;

    [[nodiscard]] const mpq_class& raw() const { return value_; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class value_{0};
};

/// n! as an exact rational.
Rational factorial(unsigned n);

}  // namespace cfpde
