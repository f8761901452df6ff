#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cfpde/problem.hpp"

namespace cfpde {

enum class Method { Cadm, Crdtm, Both };

/// Parses "cadm", "crdtm" or "both"; throws std::invalid_argument otherwise.
Method parse_method(std::string_view text);

/// Rectangular evaluation grid, t outer and x inner.
struct GridSpec {
    double x_start = 0.1;
    double x_end = 2.0;
    std::size_t x_count = 50;
    double t_start = 0.0;
    double t_end = 1.0;
    std::size_t t_count = 50;

    /// Parses "x=a:b:n,t=c:d:n"; either part may be omitted to keep its
    /// default. Throws std::invalid_argument on malformed or invalid ranges.
    static GridSpec parse(std::string_view text);

    [[nodiscard]] std::vector<double> xs() const;
    [[nodiscard]] std::vector<double> ts() const;
};

struct ErrorRow {
    double x = 0.0;
    double t = 0.0;
    std::optional<double> cadm;
    std::optional<double> crdtm;
    std::optional<double> exact;
    std::optional<double> err_cadm;
    std::optional<double> err_crdtm;
    /// |coefficient_m(x)| t^(m alpha) of the last computed grade.
    double bound = 0.0;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    std::optional<double> max_err_cadm;
    std::optional<double> max_err_crdtm;
    /// Largest |cadm - crdtm| / (1 + |cadm|) over the grid, when both ran.
    std::optional<double> max_method_gap;
};

/// Evaluates the order-m series of the selected methods (and the exact
/// solution, when present) on every grid point.
ErrorReport error_table(const ProblemSpec& p, std::size_t order, const GridSpec& grid, Method method = Method::Both);

/// Same, from series that are already solved.
ErrorReport error_table(const ProblemSpec& p, const std::optional<TSeries>& cadm, const std::optional<TSeries>& crdtm,
                        const GridSpec& grid);

inline constexpr std::string_view kCsvHeader = "x,t,cadm,crdtm,exact,err_cadm,err_crdtm,bound";

/// Header plus one line per row; absent values are empty fields and numbers
/// carry 17 significant digits.
void write_csv(std::ostream& os, const ErrorReport& report);

/// "%.17g".
std::string format_double(double v);

}  // namespace cfpde
