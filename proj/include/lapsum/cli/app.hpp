#pragma once

// Command dispatch for the lapsum executable. Everything writes to caller-supplied
// streams so the tests can drive it without a process boundary.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lapsum/cli/expression.hpp"
#include "lapsum/cli/report.hpp"
#include "lapsum/engine.hpp"

namespace lapsum::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int requirement = 2;
inline constexpr int numerical = 3;
} // namespace exit_code

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"eval",    "validate", "loop-check", "zeta-identity",
                                                "catalog", "variants", "bench"};
    return names;
}

struct CliRequest {
    std::string command;
    std::string series_expr;
    std::string variant = "base";
    std::vector<cplx> alpha;  // empty means 1
    std::optional<cplx> beta;
    std::optional<cplx> gamma;
    std::vector<double> x_samples;
    std::optional<double> tol;
    std::string method = "auto";
    std::optional<int> max_terms;
    std::optional<int> talbot_m;
    std::string format = "table";
    std::string config_path;
};

/// Request-level problems that are the caller's fault (exit 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::syntax: return exit_code::usage;
    case ErrorCode::domain:
    case ErrorCode::validation:
    case ErrorCode::divergence:
    case ErrorCode::convergence:
    case ErrorCode::structural:
    case ErrorCode::shape:
    case ErrorCode::unsupported: return exit_code::requirement;
    case ErrorCode::accuracy:
    case ErrorCode::pole:
    case ErrorCode::integrand:
    case ErrorCode::tail:
    case ErrorCode::unsuitable_transform: return exit_code::numerical;
    }
    return exit_code::numerical;
}

struct ConfigValues {
    std::optional<double> tol;
    std::optional<int> max_terms;
    std::optional<int> talbot_m;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_value(const std::string& key, const std::string& text, int line) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw UsageError("config line " + std::to_string(line) + ": bad value for " + key + ": \"" + text + "\"");
    return v;
}

} // namespace detail

/// key = value lines; '#' starts a comment. Keys: tol, max_terms, talbot_m.
inline ConfigValues parse_config(std::istream& in) {
    ConfigValues cv;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = detail::trim(std::string_view(raw).substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = detail::trim(std::string_view(s).substr(0, eq));
        const std::string val = detail::trim(std::string_view(s).substr(eq + 1));
        if (key == "tol") cv.tol = detail::parse_value<double>(key, val, line);
        else if (key == "max_terms") cv.max_terms = detail::parse_value<int>(key, val, line);
        else if (key == "talbot_m") cv.talbot_m = detail::parse_value<int>(key, val, line);
        else throw UsageError("config line " + std::to_string(line) + ": unknown key \"" + key + "\"");
    }
    return cv;
}

inline ConfigValues load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open config file " + path);
    return parse_config(f);
}

inline EngineOptions engine_options(const CliRequest& req) {
    ConfigValues cv;
    if (!req.config_path.empty()) cv = load_config(req.config_path);
    const std::optional<double> tol = req.tol ? req.tol : cv.tol;
    const std::optional<int> terms = req.max_terms ? req.max_terms : cv.max_terms;
    const std::optional<int> tm = req.talbot_m ? req.talbot_m : cv.talbot_m;
    EngineOptions opt;
    if (tol) {
        if (!(*tol > 0.0) || !(*tol < 1.0)) throw UsageError("tol must lie in (0, 1)");
        opt.quad.rel_tol = *tol;
        opt.quad.abs_tol = *tol / 100.0;
    }
    if (terms) {
        if (*terms < 8 || *terms > 10000000) throw UsageError("max_terms must lie in [8, 1e7]");
        opt.oracle_terms = *terms;
    }
    if (tm) {
        if (*tm < 8 || *tm % 2 != 0 || *tm > 256) throw UsageError("talbot_m must be even and in [8, 256]");
        opt.talbot_m = *tm;
    }
    return opt;
}

namespace detail {

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

inline void diag(std::ostream& err, std::string_view level, std::string_view code, const std::string& msg) {
    std::string m = msg;
    std::replace(m.begin(), m.end(), '\n', ' ');
    err << level << ' ' << code << ' ' << m << '\n';
}

inline KernelTag variant_tag(const std::string& name) {
    const auto t = kernel_from_name(name);
    if (!t) throw UsageError("unknown variant \"" + name + "\" (see `lapsum variants`)");
    return *t;
}

inline Method method_of(const std::string& name) {
    const auto m = method_from_name(name);
    if (!m) throw UsageError("unknown method \"" + name + "\"");
    return *m;
}

inline Format format_of(const std::string& name) {
    const auto f = format_from_name(name);
    if (!f) throw UsageError("unknown format \"" + name + "\"");
    return *f;
}

inline std::vector<cplx> alphas(const CliRequest& req) {
    return req.alpha.empty() ? std::vector<cplx>{1.0} : req.alpha;
}

inline cplx default_beta(KernelTag t) { return lapsum::detail::is_complex_variant(t) ? cplx(1.0) : cplx(0.5); }

inline SeriesProblem problem_for(const CliRequest& req, const SummandSpec& spec, KernelTag tag, cplx alpha) {
    return make_problem(spec, tag, alpha, req.beta.value_or(default_beta(tag)), req.gamma.value_or(2.0));
}

inline const SummandSpec& need_spec(const CliRequest& req, std::optional<SummandSpec>& cache) {
    if (!cache) {
        if (trim(req.series_expr).empty()) throw UsageError(req.command + " needs a series expression");
        cache = parse_series_expr(req.series_expr);
    }
    return *cache;
}

// Oracle attachment for eval: same divergence rule as cross_validate, no verdict.
inline void attach_oracle(EvalReport& rep, const SeriesProblem& p, const EngineOptions& opt) {
    if (rep.oracle_value || !rep.checks[0].passed) return;
    const cplx sgn = static_cast<double>(kernel_traits(p.variant.tag).equality_sign);
    try {
        const OracleResult o = series_oracle(p, opt, &rep.warnings);
        rep.oracle_value = sgn * o.value;
        rep.oracle_err = o.err_est;
        if (rep.path != EvalPath::oracle_only) rep.oracle_gap = std::abs(rep.value - *rep.oracle_value);
    } catch (const Error& e) {
        rep.warn(std::string("oracle_") + std::string(error_code_name(e.code())));
        if (e.code() == ErrorCode::divergence) {
            rep.checks[0] = {false, std::string("oracle: ") + e.what()};
            rep.path = EvalPath::oracle_only;
            rep.value = std::numeric_limits<double>::quiet_NaN();
            rep.err_est = std::numeric_limits<double>::infinity();
        }
    }
}

inline int report_status(const std::vector<EvalReport>& reps, std::ostream& err, const std::string& what,
                         bool use_verdict) {
    int code = exit_code::ok;
    for (const auto& r : reps) {
        for (const auto& w : r.warnings) diag(err, "WARN", w, what);
        for (std::size_t i = 0; i < r.checks.size(); ++i)
            if (!r.checks[i].passed) {
                diag(err, "ERROR", "requirement", what + ": check " + std::to_string(i) + " failed: " + r.checks[i].diagnostic);
                code = std::max(code, exit_code::requirement);
            }
        if (use_verdict && r.all_checks() && r.verdict && !*r.verdict) {
            std::string m = what + ": verdict FAIL";
            if (r.oracle_gap) m += ", gap " + detail::g17(*r.oracle_gap);
            diag(err, "ERROR", "gap", m);
            code = exit_code::numerical;
        }
    }
    return code;
}

inline int cmd_eval(const CliRequest& req, const Streams& s, bool validate) {
    std::optional<SummandSpec> spec;
    const SummandSpec& sp = need_spec(req, spec);
    const KernelTag tag = variant_tag(req.variant);
    const Method method = method_of(req.method);
    const Format fmt = format_of(req.format);
    const EngineOptions opt = engine_options(req);
    if (validate && method != Method::automatic) diag(s.err, "WARN", "method_ignored", "validate always uses auto routing");

    std::vector<EvalReport> reps;
    std::vector<ReportContext> ctx;
    for (const cplx& a : alphas(req)) {
        const SeriesProblem p = problem_for(req, sp, tag, a);
        EvalReport r;
        if (validate) {
            r = cross_validate(p, opt);
        } else {
            r = evaluate_series(p, method, opt);
            attach_oracle(r, p, opt);
        }
        reps.push_back(std::move(r));
        ctx.push_back({trim(req.series_expr), req.variant, a});
    }
    s.out << emit_reports(reps, fmt, ctx);
    return report_status(reps, s.err, trim(req.series_expr) + " " + req.variant, validate);
}

inline int cmd_loop_check(const CliRequest& req, const Streams& s) {
    std::optional<SummandSpec> spec;
    const SummandSpec& sp = need_spec(req, spec);
    const KernelTag tag = variant_tag(req.variant);
    const Format fmt = format_of(req.format);
    const EngineOptions opt = engine_options(req);
    const auto as = alphas(req);
    const SeriesProblem p = problem_for(req, sp, tag, as.front());
    const std::vector<double> xs = req.x_samples.empty() ? std::vector<double>{0.5, 1.0, 2.0} : req.x_samples;
    const EvalReport r = loop_check(p, as, xs, opt);
    s.out << emit_report(r, fmt, {trim(req.series_expr), req.variant, as.front()});
    return report_status({r}, s.err, trim(req.series_expr) + " " + req.variant + " loop", true);
}

inline int cmd_zeta_identity(const CliRequest& req, const Streams& s) {
    double a = 1.0, b = 1.0;
    std::string label = "logtrig(a=1,b=1)";
    if (!trim(req.series_expr).empty()) {
        const SummandSpec sp = parse_series_expr(req.series_expr);
        if (sp.family != Family::logtrig_sin && sp.family != Family::logtrig_cos)
            throw UsageError("zeta-identity needs a logtrig_sin or logtrig_cos expression");
        if (sp.a().imag() != 0.0 || sp.b().imag() != 0.0)
            throw Error(ErrorCode::validation, "zeta-identity: real a and b required");
        a = sp.a().real();
        b = sp.b().real();
        label = trim(req.series_expr);
    }
    const Format fmt = format_of(req.format);
    const EngineOptions opt = engine_options(req);
    const EvalReport r = zeta_identity_check(a, b, opt);
    s.out << emit_report(r, fmt, {label, "alternating", 1.0});
    return report_status({r}, s.err, label + " identity", true);
}

inline std::string family_params(Family f) {
    switch (f) {
    case Family::power: return "z";
    case Family::shifted_power: return "a, beta";
    case Family::exponential: return "c";
    case Family::cosine:
    case Family::sine: return "";
    case Family::logtrig_sin:
    case Family::logtrig_cos: return "a, b";
    }
    return "";
}

inline std::string family_summand(Family f) {
    switch (f) {
    case Family::power: return "k^-z";
    case Family::shifted_power: return "(k + a)^-beta";
    case Family::exponential: return "exp(-c k)";
    case Family::cosine: return "cos k";
    case Family::sine: return "sin k / k";
    case Family::logtrig_sin: return "sin(a ln k) / k^(b+1)";
    case Family::logtrig_cos: return "cos(a ln k) / k^(b+1)";
    }
    return "";
}

inline int cmd_catalog(const CliRequest& req, const Streams& s) {
    const Format fmt = format_of(req.format);
    if (fmt == Format::json) {
        for (Family f : all_families) {
            nlohmann::json j;
            j["family"] = std::string(family_name(f));
            j["params"] = family_params(f);
            j["summand"] = family_summand(f);
            j["inverse"] = has_density(f) ? "density" : "point_masses";
            s.out << j.dump() << "\n";
        }
        return exit_code::ok;
    }
    if (fmt == Format::csv) {
        s.out << "family,params,summand,inverse\n";
        for (Family f : all_families)
            s.out << family_name(f) << ",\"" << family_params(f) << "\",\"" << family_summand(f) << "\","
                  << (has_density(f) ? "density" : "point_masses") << "\n";
        return exit_code::ok;
    }
    s.out << detail::pad("family", 14) << " | " << detail::pad("params", 8) << " | " << detail::pad("g at k", 22)
          << " | inverse\n";
    for (Family f : all_families)
        s.out << detail::pad(std::string(family_name(f)), 14) << " | " << detail::pad(family_params(f), 8) << " | "
              << detail::pad(family_summand(f), 22) << " | " << (has_density(f) ? "density" : "point masses") << "\n";
    return exit_code::ok;
}

inline int cmd_variants(const CliRequest& req, const Streams& s) {
    const Format fmt = format_of(req.format);
    std::optional<SummandSpec> spec;
    if (!trim(req.series_expr).empty()) spec = parse_series_expr(req.series_expr);
    if (fmt == Format::csv) s.out << "variant,equality_sign,small_t_order,small_t_log" << (spec ? ",admissible" : "") << "\n";
    else if (fmt == Format::table)
        s.out << detail::pad("variant", 28) << " | sign | t^q" << (spec ? "    | admissible" : "") << "\n";
    for (KernelTag k : all_kernels) {
        const KernelTraits t = kernel_traits(k);
        const std::string name(kernel_name(k));
        const std::string q = detail::short_num(t.small_t_order, 3) + (t.small_t_log ? " log" : "");
        switch (fmt) {
        case Format::json: {
            nlohmann::json j;
            j["variant"] = name;
            j["equality_sign"] = t.equality_sign;
            j["small_t_order"] = t.small_t_order;
            j["small_t_log"] = t.small_t_log;
            if (spec) j["admissible"] = spec->admits(k);
            s.out << j.dump() << "\n";
            break;
        }
        case Format::csv:
            s.out << name << "," << t.equality_sign << "," << t.small_t_order << "," << (t.small_t_log ? 1 : 0);
            if (spec) s.out << "," << (spec->admits(k) ? 1 : 0);
            s.out << "\n";
            break;
        case Format::table:
            s.out << detail::pad(name, 28) << " | " << detail::pad(t.equality_sign > 0 ? "+1" : "-1", 4) << " | "
                  << detail::pad(q, 6);
            if (spec) s.out << " | " << (spec->admits(k) ? "yes" : "no");
            s.out << "\n";
            break;
        }
    }
    return exit_code::ok;
}

struct BenchEntry {
    std::string label;
    Family family;
    SummandParams params;
};

inline std::vector<BenchEntry> bench_corpus() {
    return {
        {"power(z=3)", Family::power, {.z = 3.0}},
        {"shifted_power(a=0.3,beta=2)", Family::shifted_power, {.a = 0.3, .beta = 2.0}},
        {"exp(c=1)", Family::exponential, {.c = 1.0}},
        {"cos()", Family::cosine, {}},
        {"sin()", Family::sine, {}},
        {"logtrig_sin(a=1,b=1)", Family::logtrig_sin, {.a = 1.0, .b = 1.0}},
        {"logtrig_cos(a=1,b=1)", Family::logtrig_cos, {.a = 1.0, .b = 1.0}},
    };
}

inline KernelVariant bench_variant(KernelTag k) {
    if (lapsum::detail::is_complex_variant(k)) return make_variant(k, 0.5, 1.0, 2.0);
    return make_variant(k, 1.0, 0.5, 2.0);
}

/// Worst |kernel - series side| over the generating exponentials e^{-ck}, c in {0.5, 1, 2}.
inline double generating_identity_gap(const KernelVariant& v) {
    double worst = 0.0;
    for (double c : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(kernel_eval(v, c) - generating_sum(v, c)));
    return worst;
}

inline int cmd_bench(const CliRequest& req, const Streams& s) {
    const EngineOptions opt = engine_options(req);
    const auto corpus = bench_corpus();
    s.out << "variant";
    for (const auto& e : corpus) s.out << ",\"" << e.label << "\"";
    s.out << ",generating_identity\n";
    int code = exit_code::ok;
    for (KernelTag k : all_kernels) {
        const KernelVariant v = bench_variant(k);
        s.out << kernel_name(k);
        for (const auto& e : corpus) {
            s.out << ",";
            const SummandSpec spec = make_summand(e.family, e.params);
            if (!spec.admits(k)) {
                s.out << "-";
                continue;
            }
            try {
                const EvalReport r = cross_validate(make_problem(spec, k, v.alpha, v.beta, v.gamma), opt);
                if (r.oracle_gap) s.out << detail::g17(*r.oracle_gap);
                else s.out << (r.all_checks() ? "fail" : "gated");
                if (r.all_checks() && (!r.verdict || !*r.verdict)) {
                    diag(s.err, "WARN", "bench_gap", e.label + " " + std::string(kernel_name(k)) + " verdict FAIL");
                }
            } catch (const Error& ex) {
                s.out << "err:" << error_code_name(ex.code());
                diag(s.err, "WARN", error_code_name(ex.code()), e.label + " " + std::string(kernel_name(k)) + ": " + ex.what());
            }
        }
        const double gap = generating_identity_gap(v);
        s.out << "," << detail::g17(gap) << "\n";
        if (!(gap <= 1e-10)) {
            diag(s.err, "ERROR", "generating_identity", std::string(kernel_name(k)) + " gap " + detail::g17(gap));
            code = exit_code::numerical;
        }
    }
    return code;
}

} // namespace detail

/// Runs one request; the report goes to `out`, diagnostics to `err`. Returns the process exit code.
inline int run(const CliRequest& req, std::ostream& out, std::ostream& err) {
    const detail::Streams s{out, err};
    try {
        if (req.command == "eval") return detail::cmd_eval(req, s, false);
        if (req.command == "validate") return detail::cmd_eval(req, s, true);
        if (req.command == "loop-check") return detail::cmd_loop_check(req, s);
        if (req.command == "zeta-identity") return detail::cmd_zeta_identity(req, s);
        if (req.command == "catalog") return detail::cmd_catalog(req, s);
        if (req.command == "variants") return detail::cmd_variants(req, s);
        if (req.command == "bench") return detail::cmd_bench(req, s);
        throw UsageError("unknown command \"" + req.command + "\"");
    } catch (const UsageError& e) {
        detail::diag(err, "ERROR", "usage", e.what());
        return exit_code::usage;
    } catch (const SyntaxError& e) {
        detail::diag(err, "ERROR", "syntax", e.what());
        return exit_code::usage;
    } catch (const Error& e) {
        detail::diag(err, "ERROR", error_code_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        detail::diag(err, "ERROR", "internal", e.what());
        return exit_code::numerical;
    }
}

/// Parses argv-style arguments (without the program name) and runs them.
inline int main_entry(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lapsum: infinite series through Laplace-transform kernels", "lapsum"};
    CliRequest req;
    std::vector<std::string> alpha_text;
    std::string beta_text, gamma_text;
    double tol = 0.0;
    int max_terms = 0;

    app.add_option("command", req.command, "eval | validate | loop-check | zeta-identity | catalog | variants | bench")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("series", req.series_expr, "series expression, e.g. \"power(z=2)\"");
    app.add_option("--variant", req.variant, "kernel variant (default base)");
    app.add_option("--alpha", alpha_text, "kernel frequency; repeat for several values")->allow_extra_args(false);
    app.add_option("--beta", beta_text, "kernel shift");
    app.add_option("--gamma", gamma_text, "kernel power factor");
    app.add_option("--x", req.x_samples, "dual-series sample points for loop-check")->allow_extra_args(false);
    auto* tol_opt = app.add_option("--tol", tol, "relative quadrature tolerance");
    auto* terms_opt = app.add_option("--max-terms", max_terms, "oracle term count");
    app.add_option("--method", req.method, "auto | point_mass | quadrature | ilt_quadrature")
        ->check(CLI::IsMember({"auto", "point_mass", "quadrature", "ilt_quadrature"}));
    app.add_option("--format", req.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--config", req.config_path, "key = value file (tol, max_terms, talbot_m)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        detail::diag(err, "ERROR", "usage", e.what());
        return exit_code::usage;
    }

    try {
        for (const auto& a : alpha_text) req.alpha.push_back(parse_complex(a));
        if (!beta_text.empty()) req.beta = parse_complex(beta_text);
        if (!gamma_text.empty()) req.gamma = parse_complex(gamma_text);
    } catch (const SyntaxError& e) {
        detail::diag(err, "ERROR", "syntax", std::string("kernel parameter: ") + e.what());
        return exit_code::usage;
    }
    if (tol_opt->count()) req.tol = tol;
    if (terms_opt->count()) req.max_terms = max_terms;
    return run(req, out, err);
}

} // namespace lapsum::cli
