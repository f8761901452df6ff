#include "cfpde/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cfpde/cadm.hpp"
#include "cfpde/crdtm.hpp"

namespace cfpde {

Method parse_method(std::string_view text) {
    if (text == "cadm") return Method::Cadm;
    if (text == "crdtm") return Method::Crdtm;
    if (text == "both") return Method::Both;
    throw std::invalid_argument("unknown method '" + std::string(text) + "' (expected cadm, crdtm or both)");
}

namespace {

double parse_real(std::string_view s, std::string_view what) {
    const std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != str.size() || !std::isfinite(v))
        throw std::invalid_argument("grid: bad number '" + str + "' in " + std::string(what));
    return v;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1) out.back() = b;
    return out;
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
    GridSpec g;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (part.size() < 2 || part[1] != '=' || (part[0] != 'x' && part[0] != 't'))
            throw std::invalid_argument("grid: expected x=a:b:n or t=c:d:n, got '" + std::string(part) + "'");
        const auto range = part.substr(2);
        const auto c1 = range.find(':');
        const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
        if (c2 == std::string_view::npos)
            throw std::invalid_argument("grid: range '" + std::string(part) + "' needs start:end:count");
        const double start = parse_real(range.substr(0, c1), part);
        const double end = parse_real(range.substr(c1 + 1, c2 - c1 - 1), part);
        const double count = parse_real(range.substr(c2 + 1), part);
        if (count < 1 || count != std::floor(count) || count > 1e7)
            throw std::invalid_argument("grid: count must be a positive integer in '" + std::string(part) + "'");
        if (end < start) throw std::invalid_argument("grid: range must be increasing in '" + std::string(part) + "'");
        if (part[0] == 'x') {
            if (!(start > 0.0)) throw std::invalid_argument("grid: x range must start above 0");
            g.x_start = start;
            g.x_end = end;
            g.x_count = static_cast<std::size_t>(count);
        } else {
            if (start < 0.0) throw std::invalid_argument("grid: t range must start at or above 0");
            g.t_start = start;
            g.t_end = end;
            g.t_count = static_cast<std::size_t>(count);
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return g;
}

std::vector<double> GridSpec::xs() const { return linspace(x_start, x_end, x_count); }
std::vector<double> GridSpec::ts() const { return linspace(t_start, t_end, t_count); }

ErrorReport error_table(const ProblemSpec& p, std::size_t order, const GridSpec& grid, Method method) {
    std::optional<TSeries> cadm;
    std::optional<TSeries> crdtm;
    if (method != Method::Crdtm) cadm = cadm_solve(p, order).series;
    if (method != Method::Cadm) crdtm = crdtm_solve(p, order);
    return error_table(p, cadm, crdtm, grid);
}

ErrorReport error_table(const ProblemSpec& p, const std::optional<TSeries>& cadm, const std::optional<TSeries>& crdtm,
                        const GridSpec& grid) {
    ErrorReport report;
    const TSeries& last_source = cadm ? *cadm : *crdtm;
    const std::size_t m = last_source.size() == 0 ? 0 : last_source.size() - 1;
    const Expr& last = last_source.coeffs().empty() ? Expr() : last_source.coeffs().back();
    const double grade_power = static_cast<double>(m) * p.alpha.to_double();

    auto track = [](std::optional<double>& slot, double v) { slot = slot ? std::max(*slot, v) : v; };

    for (double t : grid.ts()) {
        for (double x : grid.xs()) {
            ErrorRow row;
            row.x = x;
            row.t = t;
            try {
                if (cadm) row.cadm = series_eval(*cadm, x, t);
                if (crdtm) row.crdtm = series_eval(*crdtm, x, t);
                if (p.has_exact()) row.exact = exact_eval(p, x, t);
                row.bound = m == 0 || t == 0.0 ? 0.0 : std::abs(eval_at(last, x)) * std::pow(t, grade_power);
            } catch (const std::domain_error& e) {
                throw std::domain_error(std::string(e.what()) + " at grid point (x=" + format_double(x) +
                                        ", t=" + format_double(t) + ")");
            }
            if (row.exact && row.cadm) {
                row.err_cadm = std::abs(*row.cadm - *row.exact);
                track(report.max_err_cadm, *row.err_cadm);
            }
            if (row.exact && row.crdtm) {
                row.err_crdtm = std::abs(*row.crdtm - *row.exact);
                track(report.max_err_crdtm, *row.err_crdtm);
            }
            if (row.cadm && row.crdtm) track(report.max_method_gap, std::abs(*row.cadm - *row.crdtm) / (1.0 + std::abs(*row.cadm)));
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const ErrorReport& report) {
    auto field = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    os << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        os << format_double(r.x) << ',' << format_double(r.t) << ',' << field(r.cadm) << ',' << field(r.crdtm) << ','
           << field(r.exact) << ',' << field(r.err_cadm) << ',' << field(r.err_crdtm) << ',' << format_double(r.bound)
           << '\n';
    }
}

}  // namespace cfpde
