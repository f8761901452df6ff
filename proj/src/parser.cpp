#include "cfpde/parser.hpp"

#include <array>
#include <cctype>

namespace cfpde {

namespace {

std::string located(int line, int column, const std::string& message) {
    if (line > 0) return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    return "column " + std::to_string(column) + ": " + message;
}

constexpr std::array<std::string_view, 5> kSymbols{"x", "t", "a", "b", "u"};
constexpr std::array<std::string_view, 6> kFunctions{"sin", "cos", "exp", "Da", "Db", "Db2"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& names, std::string_view s) {
    for (auto n : names)
        if (n == s) return true;
    return false;
}

class Parser {
public:
    Parser(std::string_view text, int line, int column_offset)
        : text_(text), line_(line), column_offset_(column_offset) {}

    RawExpr parse() {
        skip_space();
        if (pos_ >= text_.size()) fail("empty expression");
        RawExpr e = expr();
        skip_space();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, column_offset_ + static_cast<int>(pos_) + 1, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of expression");
            fail(std::string("expected '") + c + "'");
        }
    }

    RawExpr expr() {
        RawExpr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = RawExpr::binary(RawExpr::Kind::Add, std::move(lhs), term());
            } else if (accept('-')) {
                lhs = RawExpr::binary(RawExpr::Kind::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    RawExpr term() {
        RawExpr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = RawExpr::binary(RawExpr::Kind::Mul, std::move(lhs), unary());
            } else if (accept('/')) {
                lhs = RawExpr::binary(RawExpr::Kind::Div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    RawExpr unary() {
        if (accept('-')) return RawExpr::neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    RawExpr power() {
        RawExpr base = primary();
        if (accept('^')) return RawExpr::binary(RawExpr::Kind::Pow, std::move(base), unary());
        return base;
    }

    RawExpr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RawExpr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected '") + c + "'");
    }

    RawExpr number() {
        const std::size_t start = pos_;
        bool seen_dot = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
                ++pos_;
            } else {
                break;
            }
        }
        const auto literal = text_.substr(start, pos_ - start);
        try {
            return RawExpr::number(Rational::parse(literal));
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number '" + std::string(literal) + "'");
        }
    }

    RawExpr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            if (!contains(kFunctions, name)) {
                pos_ = start;
                fail("unknown function '" + name + "'");
            }
            ++pos_;
            RawExpr arg = expr();
            expect(')');
            return RawExpr::call(name, std::move(arg));
        }
        if (!contains(kSymbols, name)) {
            pos_ = start;
            if (contains(kFunctions, name)) fail("function '" + name + "' needs an argument");
            fail("unknown symbol '" + name + "'");
        }
        return RawExpr::symbol(name);
    }

    std::string_view text_;
    int line_;
    int column_offset_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(located(line, column, message)), line_(line), column_(column), detail_(message) {}

RawExpr parse_expression(std::string_view text, int line, int column_offset) {
    return Parser(text, line, column_offset).parse();
}

}  // namespace cfpde
