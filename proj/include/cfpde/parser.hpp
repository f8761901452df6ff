#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cfpde/raw_expr.hpp"

namespace cfpde {

/// Syntax or semantic error located in a problem file or expression string.
/// Line and column are 1-based; line 0 means "not tied to a file line".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }
    [[nodiscard]] const std::string& detail() const { return detail_; }

private:
    int line_;
    int column_;
    std::string detail_;
};

/// Recursive-descent parser for the expression grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | symbol | function '(' expr ')' | '(' expr ')'
///
/// Symbols are x, t, a, b, u; functions are sin, cos, exp, Da, Db, Db2.
/// Numbers are unsigned integer or decimal literals, held exactly.
/// `line` and `column_offset` position reported errors inside a file.
RawExpr parse_expression(std::string_view text, int line = 0, int column_offset = 0);

}  // namespace cfpde
