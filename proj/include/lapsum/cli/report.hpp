#pragma once

// Report rendering: aligned table, one JSON object per report, or CSV.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lapsum/engine.hpp"

namespace lapsum::cli {

enum class Format { table, json, csv };

inline std::optional<Format> format_from_name(std::string_view s) {
    if (s == "table") return Format::table;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return std::nullopt;
}

/// What the report was computed for; only the CSV row uses it.
struct ReportContext {
    std::string series;
    std::string variant;
    cplx alpha = 1.0;
};

namespace detail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string g17(cplx v) {
    if (v.imag() == 0.0) return g17(v.real());
    std::string s = g17(v.real());
    s += v.imag() < 0.0 ? "-" : "+";
    return s + g17(std::abs(v.imag())) + "i";
}

inline std::string short_num(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string short_num(cplx v, int digits = 16) {
    if (v.imag() == 0.0) return short_num(v.real(), digits);
    std::string s = short_num(v.real(), digits);
    s += v.imag() < 0.0 ? " - " : " + ";
    return s + short_num(std::abs(v.imag()), digits) + "i";
}

inline std::string checks_text(const EvalReport& r) {
    std::string s;
    for (const auto& c : r.checks) s += c.passed ? '1' : '0';
    return s;
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

} // namespace detail

inline nlohmann::json report_json(const EvalReport& r) {
    nlohmann::json j;
    j["value_re"] = r.value.real();
    j["value_im"] = r.value.imag();
    j["err_est"] = r.err_est;
    j["path"] = std::string(path_name(r.path));
    j["checks"] = nlohmann::json::array({r.checks[0].passed, r.checks[1].passed, r.checks[2].passed});
    j["oracle_gap"] = r.oracle_gap ? nlohmann::json(*r.oracle_gap) : nlohmann::json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

inline constexpr std::string_view csv_header = "series,variant,alpha,value,err_est,path,oracle_gap";

inline std::string csv_row(const EvalReport& r, const ReportContext& ctx) {
    std::string row = detail::csv_quote(ctx.series);
    row += "," + ctx.variant;
    row += "," + detail::g17(ctx.alpha);
    row += "," + detail::g17(r.value);
    row += "," + detail::g17(r.err_est);
    row += "," + std::string(path_name(r.path));
    row += "," + (r.oracle_gap ? detail::g17(*r.oracle_gap) : std::string());
    return row;
}

inline std::string table_header() {
    using detail::pad;
    return pad("Value", 42) + " | " + pad("±Err", 13) + " | " + pad("Path", 13) + " | " + pad("Checks", 6) + " | Gap";
}

inline std::string table_row(const EvalReport& r) {
    using detail::pad;
    std::string row = pad(detail::short_num(r.value), 42) + " | " + pad(detail::short_num(r.err_est, 3), 12) + " | " +
                      pad(std::string(path_name(r.path)), 13) + " | " + pad(detail::checks_text(r), 6) + " | " +
                      (r.oracle_gap ? detail::short_num(*r.oracle_gap, 3) : std::string("-"));
    for (const auto& c : r.components) {
        row += "\n  " + pad(c.label, 20) + " " + detail::short_num(c.value);
        if (c.reference) row += "  ref " + detail::short_num(*c.reference);
        if (c.gap) row += "  gap " + detail::short_num(*c.gap, 3);
        row += c.passed ? "  ok" : "  FAIL";
    }
    if (r.verdict) row += std::string("\n  verdict: ") + (*r.verdict ? "PASS" : "FAIL");
    for (std::size_t i = 0; i < r.checks.size(); ++i)
        if (!r.checks[i].passed) row += "\n  check " + std::to_string(i) + ": " + r.checks[i].diagnostic;
    return row;
}

/// Renders a batch; table and csv share one header, json writes one object per line.
inline std::string emit_reports(const std::vector<EvalReport>& reports, Format f,
                                const std::vector<ReportContext>& ctx = {}) {
    std::ostringstream os;
    switch (f) {
    case Format::json:
        for (const auto& r : reports) os << report_json(r).dump() << "\n";
        break;
    case Format::csv:
        os << csv_header << "\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            os << csv_row(reports[i], i < ctx.size() ? ctx[i] : ReportContext{}) << "\n";
        break;
    case Format::table:
        os << table_header() << "\n";
        for (const auto& r : reports) os << table_row(r) << "\n";
        break;
    }
    return os.str();
}

inline std::string emit_report(const EvalReport& r, Format f, const ReportContext& ctx = {}) {
    return emit_reports({r}, f, {ctx});
}

} // namespace lapsum::cli
