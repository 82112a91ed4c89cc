#pragma once

// Evaluation paths (point masses, quadrature, numerical inversion + quadrature),
// the three requirement gates, oracle cross-validation and the A/B loop check.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lapsum/error.hpp"
#include "lapsum/ilt.hpp"
#include "lapsum/kernel_library.hpp"
#include "lapsum/quadrature.hpp"
#include "lapsum/summation_oracles.hpp"
#include "lapsum/transform_catalog.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

enum class Method { automatic, point_mass, quadrature, ilt_quadrature };
enum class EvalPath { point_mass, quadrature, ilt_quadrature, oracle_only };

inline constexpr std::string_view path_name(EvalPath p) {
    switch (p) {
    case EvalPath::point_mass: return "PointMass";
    case EvalPath::quadrature: return "Quadrature";
    case EvalPath::ilt_quadrature: return "IltQuadrature";
    case EvalPath::oracle_only: return "OracleOnly";
    }
    return "?";
}

inline constexpr std::string_view method_name(Method m) {
    switch (m) {
    case Method::automatic: return "auto";
    case Method::point_mass: return "point_mass";
    case Method::quadrature: return "quadrature";
    case Method::ilt_quadrature: return "ilt_quadrature";
    }
    return "?";
}

inline std::optional<Method> method_from_name(std::string_view s) {
    for (Method m : {Method::automatic, Method::point_mass, Method::quadrature, Method::ilt_quadrature})
        if (method_name(m) == s) return m;
    return std::nullopt;
}

struct RequirementCheck {
    bool passed = true;
    std::string diagnostic;
};

/// One labelled sub-result (identity parts, loop-check samples).
struct ReportComponent {
    std::string label;
    cplx value;
    std::optional<cplx> reference;
    std::optional<double> gap;
    bool passed = true;
};

struct EvalReport {
    cplx value = 0.0;
    double err_est = 0.0;
    EvalPath path = EvalPath::oracle_only;
    std::array<RequirementCheck, 3> checks;  // series converges, transform obtained, integral converges
    std::optional<cplx> oracle_value;
    std::optional<double> oracle_err;
    std::optional<double> oracle_gap;
    std::optional<bool> verdict;
    std::vector<std::string> warnings;
    std::vector<ReportComponent> components;

    bool all_checks() const { return checks[0].passed && checks[1].passed && checks[2].passed; }
    void warn(const std::string& code) {
        for (const auto& w : warnings)
            if (w == code) return;
        warnings.push_back(code);
    }
};

struct SeriesProblem {
    SummandSpec spec;
    KernelVariant variant;
};

struct EngineOptions {
    QuadConfig quad{};
    int talbot_m = 32;
    int oracle_terms = 64;
};

inline SeriesProblem make_problem(const SummandSpec& spec, KernelTag tag, cplx alpha, cplx beta = 0.0,
                                  cplx gamma = 0.0) {
    const std::string who = std::string(family_name(spec.family)) + "/" + std::string(kernel_name(tag));
    if (spec.family == Family::cosine || spec.family == Family::sine) {
        if (alpha.imag() != 0.0 || !(std::abs(alpha.real()) > 0.0) || !(std::abs(alpha.real()) < 2.0 * pi))
            throw Error(ErrorCode::validation, who + ": 0 < |alpha| < 2 pi with alpha real violated");
    } else if (!(alpha.real() > 0.0)) {
        throw Error(ErrorCode::validation, who + ": Re(alpha) > 0 violated");
    }
    return SeriesProblem{spec, make_variant(tag, alpha, beta, gamma)};
}

namespace detail {

inline cplx series_sign(const SeriesProblem& p) { return static_cast<double>(kernel_traits(p.variant.tag).equality_sign); }

inline double family_decay(const SummandSpec& s) { return s.family == Family::shifted_power ? s.a().real() : 0.0; }

inline RequirementCheck check_series(const SeriesProblem& p, const SeriesShape& shape, EvalReport& rep) {
    const SeriesClass c = classify_series(p.spec, shape);
    switch (c) {
    case SeriesClass::absolute: return {true, "absolutely convergent"};
    case SeriesClass::conditional: return {true, "conditionally convergent"};
    case SeriesClass::abel:
        rep.warn("abel_summation");
        return {true, "bounded oscillating terms; value is the Abel sum"};
    case SeriesClass::divergent: break;
    }
    return {false, "series diverges: terms do not decay"};
}

inline RequirementCheck check_integral(const SeriesProblem& p, const SeriesShape& shape, const InverseTransform& it) {
    if (it.has_density()) {
        const SmallTOrder q = smallt_order(p.variant);
        const double pq = it.order + q.q;
        if (!(pq > -1.0))
            return {false, "integrand ~ t^" + std::to_string(pq) + " at 0 is not integrable"};
        const double decay = family_decay(p.spec) + kernel_decay_rate(p.variant);
        if (!(decay > 0.0)) return {false, "integrand does not decay as t -> inf"};
        const double lo = -family_decay(p.spec);
        if (!(shape.argument(shape.index_start).real() > lo) || shape.slope.real() < 0.0)
            return {false, "series arguments leave the half-plane where g is a Laplace transform"};
        return {true, "integrand order " + std::to_string(pq) + " at 0, decay rate " + std::to_string(decay)};
    }
    for (const auto& m : it.point_masses) {
        try {
            (void)kernel_eval(p.variant, m.location);
        } catch (const PoleError&) {
            return {false, "kernel has a pole at a point-mass location"};
        }
    }
    return {true, "kernel finite at every point mass"};
}

inline std::string join_context(std::string_view ctx, const char* what) { return std::string(ctx) + ": " + what; }

template <class F>
auto with_context(std::string_view ctx, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const AccuracyError& e) {
        throw AccuracyError(e.best_estimate(), e.err_est(), join_context(ctx, e.what()));
    } catch (const IntegrandError& e) {
        throw IntegrandError(e.node(), join_context(ctx, e.what()));
    } catch (const PoleError& e) {
        throw PoleError(e.location(), join_context(ctx, e.what()));
    } catch (const TailError&) {
        throw;
    } catch (const SyntaxError&) {
        throw;
    } catch (const Error& e) {
        throw Error(e.code(), join_context(ctx, e.what()));
    }
}

inline QuadResult integrate_density(const std::function<cplx(double)>& G, const KernelVariant& v, double order,
                                    const QuadConfig& cfg) {
    const SmallTOrder q = smallt_order(v);
    auto f = [&](double t) -> cplx {
        const cplx g = G(t);
        if (g == 0.0) return 0.0;
        return g * kernel_eval(v, t);
    };
    return integrate_semiinf(f, {order + q.q, q.log_flag}, cfg);
}

inline std::function<cplx(double)> ilt_density(const Transform& g, int M) {
    return [g, M](double t) { return talbot_apply(g, make_talbot_plan(t, M)); };
}

// Sign changes of Re G on [0.5, 8]; two or more means the inversion is fighting oscillation.
inline bool oscillation_risk(const std::function<cplx(double)>& G) {
    int changes = 0;
    double prev = G(0.5).real();
    for (int i = 1; i <= 48; ++i) {
        const double v = G(0.5 + 7.5 * i / 48.0).real();
        if ((v > 0) != (prev > 0) && v != 0.0 && prev != 0.0) ++changes;
        prev = v;
    }
    return changes >= 2;
}

// Estimate the small-t exponent of a numerically inverted density.
inline double estimate_order(const std::function<cplx(double)>& G) {
    const double t1 = 1e-3, t2 = 1e-4;
    const double a = std::abs(G(t1)), b = std::abs(G(t2));
    if (!(a > 0.0) || !(b > 0.0)) return 0.0;
    return std::log(a / b) / std::log(t1 / t2);
}

inline QuadConfig ilt_quad(QuadConfig cfg) {
    cfg.rel_tol = std::max(cfg.rel_tol, 1e-8);
    cfg.abs_tol = std::max(cfg.abs_tol, 1e-10);
    return cfg;
}

} // namespace detail

/// Independent reference for the integral side s*sum + c0 g(0); the oracle is chosen by shape.
inline OracleResult series_oracle(const SeriesProblem& p, const EngineOptions& opt, std::vector<std::string>* warnings = nullptr) {
    const SeriesShape shape = series_shape(p.variant);
    if (p.spec.family == Family::cosine || p.spec.family == Family::sine) return sum_abel(p.spec, shape);
    if (shape.alternating) return sum_alternating(p.spec, shape, opt.oracle_terms);
    try {
        return sum_direct(p.spec, shape, opt.oracle_terms, TailMethod::euler_maclaurin(4), opt.quad);
    } catch (const TailError& e) {
        if (warnings) warnings->push_back("tail_fallback");
        return e.partial();
    }
}

inline EvalReport evaluate_series(const SeriesProblem& p, Method method = Method::automatic,
                                  const EngineOptions& opt = {}) {
    EvalReport rep;
    const SeriesShape shape = series_shape(p.variant);
    const InverseTransform it = inverse_transform(p.spec);
    const cplx sgn = detail::series_sign(p);

    rep.checks[0] = detail::check_series(p, shape, rep);

    EvalPath path = EvalPath::oracle_only;
    switch (method) {
    case Method::automatic: path = it.has_density() ? EvalPath::quadrature : EvalPath::point_mass; break;
    case Method::point_mass: path = EvalPath::point_mass; break;
    case Method::quadrature: path = EvalPath::quadrature; break;
    case Method::ilt_quadrature: path = EvalPath::ilt_quadrature; break;
    }
    rep.checks[1] = {true, it.has_density() ? "closed-form density" : "closed-form point masses"};
    const Transform g = [&p](cplx s) { return summand_eval(p.spec, s); };
    if (path == EvalPath::point_mass && !it.has_point_masses()) {
        rep.checks[1] = {false, "point-mass path requested but the transform is a density"};
        rep.warn("method_mismatch");
    } else if (path == EvalPath::quadrature && !it.has_density()) {
        rep.checks[1] = {false, "quadrature path requested but the transform is distributional"};
        rep.warn("method_mismatch");
    } else if (path == EvalPath::ilt_quadrature) {
        if (it.has_point_masses()) {
            rep.checks[1] = {false, "numerical inversion of a point-mass transform is not a function"};
            rep.warn("ilt_point_mass");
        } else {
            try {
                (void)talbot_ilt(g, 1.0, opt.talbot_m);
                rep.checks[1] = {true, "numerical inversion (fixed Talbot)"};
            } catch (const Error& e) {
                rep.checks[1] = {false, std::string("numerical inversion failed: ") + e.what()};
            }
        }
    }
    rep.checks[2] = detail::check_integral(p, shape, it);

    if (!rep.all_checks()) {
        rep.path = EvalPath::oracle_only;
        rep.warn("requirement_failed");
        if (!rep.checks[0].passed) {
            rep.value = std::numeric_limits<double>::quiet_NaN();
            rep.err_est = std::numeric_limits<double>::infinity();
            return rep;
        }
        try {
            const OracleResult o = series_oracle(p, opt, &rep.warnings);
            rep.oracle_value = sgn * o.value;
            rep.oracle_err = o.err_est;
            rep.value = sgn * o.value;
            rep.err_est = o.err_est;
        } catch (const Error& e) {
            rep.warn(std::string("oracle_") + std::string(error_code_name(e.code())));
            rep.value = std::numeric_limits<double>::quiet_NaN();
            rep.err_est = std::numeric_limits<double>::infinity();
        }
        return rep;
    }

    rep.path = path;
    cplx I = 0.0;
    switch (path) {
    case EvalPath::point_mass: {
        double mag = 0.0;
        for (const auto& m : it.point_masses) {
            const cplx v = detail::with_context("point-mass path", [&] { return m.weight * kernel_eval(p.variant, m.location); });
            I += v;
            mag += std::abs(v);
        }
        rep.err_est = 8.0 * std::numeric_limits<double>::epsilon() * std::max(mag, 1.0);
        break;
    }
    case EvalPath::quadrature: {
        const QuadResult q = detail::with_context("quadrature path", [&] {
            return detail::integrate_density(it.density, p.variant, it.order, opt.quad);
        });
        I = q.value;
        rep.err_est = q.err_est;
        break;
    }
    case EvalPath::ilt_quadrature: {
        const auto G = detail::ilt_density(g, opt.talbot_m);
        if (detail::oscillation_risk(G)) rep.warn("ilt_oscillation_risk");
        const QuadResult q = detail::with_context("ilt path", [&] {
            return detail::integrate_density(G, p.variant, it.order, detail::ilt_quad(opt.quad));
        });
        I = q.value;
        rep.err_est = q.err_est;
        break;
    }
    case EvalPath::oracle_only: break;
    }
    rep.value = sgn * I;
    return rep;
}

inline EvalReport cross_validate(const SeriesProblem& p, const EngineOptions& opt = {}) {
    EvalReport rep;
    bool integral_ok = true;
    try {
        rep = evaluate_series(p, Method::automatic, opt);
    } catch (const Error& e) {
        integral_ok = false;
        rep.path = EvalPath::oracle_only;
        rep.warn(std::string("integral_") + std::string(error_code_name(e.code())));
        rep.value = std::numeric_limits<double>::quiet_NaN();
        rep.err_est = std::numeric_limits<double>::infinity();
        const SeriesShape shape = series_shape(p.variant);
        rep.checks[0] = detail::check_series(p, shape, rep);
    }
    const cplx sgn = detail::series_sign(p);
    if (!rep.oracle_value) {
        try {
            const OracleResult o = series_oracle(p, opt, &rep.warnings);
            rep.oracle_value = sgn * o.value;
            rep.oracle_err = o.err_est;
        } catch (const Error& e) {
            rep.warn(std::string("oracle_") + std::string(error_code_name(e.code())));
            if (e.code() == ErrorCode::divergence) {
                rep.checks[0] = {false, std::string("oracle: ") + e.what()};
                if (rep.path != EvalPath::oracle_only) {
                    rep.path = EvalPath::oracle_only;
                    rep.value = std::numeric_limits<double>::quiet_NaN();
                    rep.err_est = std::numeric_limits<double>::infinity();
                }
            }
        }
    }
    if (!integral_ok && rep.oracle_value) {
        rep.value = *rep.oracle_value;
        rep.err_est = *rep.oracle_err;
    }
    if (rep.oracle_value && rep.all_checks() && integral_ok && rep.path != EvalPath::oracle_only) {
        rep.oracle_gap = std::abs(rep.value - *rep.oracle_value);
        rep.verdict = *rep.oracle_gap <= 10.0 * (rep.err_est + *rep.oracle_err);
    } else {
        rep.verdict = false;
    }
    return rep;
}

struct MixtureTerm {
    cplx coefficient;
    SummandSpec spec;
};

/// Integral path for sum_i c_i g_i sharing one kernel.
inline EvalReport evaluate_mixture(const std::vector<MixtureTerm>& terms, const KernelVariant& v,
                                   const EngineOptions& opt = {}) {
    if (terms.empty()) throw Error(ErrorCode::validation, "empty mixture");
    std::vector<InverseTransform> its;
    double order = std::numeric_limits<double>::infinity();
    bool dens = true, mass = true;
    for (const auto& t : terms) {
        its.push_back(inverse_transform(t.spec));
        dens = dens && its.back().has_density();
        mass = mass && !its.back().has_density();
        if (its.back().has_density()) order = std::min(order, its.back().order);
    }
    if (!dens && !mass) throw Error(ErrorCode::structural, "mixture mixes densities and point masses");
    EvalReport rep;
    const double sgn = kernel_traits(v.tag).equality_sign;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        SeriesProblem p{terms[i].spec, v};
        EvalReport sub;
        rep.checks[0].passed = rep.checks[0].passed && detail::check_series(p, series_shape(v), sub).passed;
        rep.checks[2].passed =
            rep.checks[2].passed && detail::check_integral(p, series_shape(v), its[i]).passed;
    }
    if (!rep.all_checks()) {
        rep.path = EvalPath::oracle_only;
        rep.value = std::numeric_limits<double>::quiet_NaN();
        rep.err_est = std::numeric_limits<double>::infinity();
        rep.warn("requirement_failed");
        return rep;
    }
    if (dens) {
        auto G = [&](double t) -> cplx {
            cplx s = 0.0;
            for (std::size_t i = 0; i < terms.size(); ++i) s += terms[i].coefficient * its[i].density(t);
            return s;
        };
        const QuadResult q = detail::integrate_density(G, v, order, opt.quad);
        rep.value = sgn * q.value;
        rep.err_est = q.err_est;
        rep.path = EvalPath::quadrature;
    } else {
        cplx I = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i)
            for (const auto& m : its[i].point_masses) I += terms[i].coefficient * m.weight * kernel_eval(v, m.location);
        rep.value = sgn * I;
        rep.err_est = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(I));
        rep.path = EvalPath::point_mass;
    }
    return rep;
}

/// Integral path for a summand given only as a transform g(s) (no closed-form inverse).
inline EvalReport evaluate_transform(const Transform& g, const KernelVariant& v, const EngineOptions& opt = {}) {
    EvalReport rep;
    const SeriesShape shape = series_shape(v);
    auto term = [&](double k) { return shape.term_weight(k) * g(shape.argument(k)); };
    try {
        detail::divergence_probe(term, shape.index_start, opt.oracle_terms);
        rep.checks[0] = {true, "partial sums pass the dyadic Cauchy test"};
    } catch (const Error& e) {
        rep.checks[0] = {false, e.what()};
    }
    try {
        (void)talbot_ilt(g, 1.0, opt.talbot_m);
        rep.checks[1] = {true, "numerical inversion (fixed Talbot)"};
    } catch (const Error& e) {
        rep.checks[1] = {false, std::string("numerical inversion failed: ") + e.what()};
    }
    double order = 0.0;
    const auto G = detail::ilt_density(g, opt.talbot_m);
    if (rep.checks[1].passed) {
        order = detail::estimate_order(G);
        const double pq = order + smallt_order(v).q;
        rep.checks[2] = {pq > -1.0 && kernel_decay_rate(v) > 0.0, "estimated order " + std::to_string(pq)};
    } else {
        rep.checks[2] = {false, "no inverse transform"};
    }
    if (!rep.all_checks()) {
        rep.path = EvalPath::oracle_only;
        rep.value = std::numeric_limits<double>::quiet_NaN();
        rep.err_est = std::numeric_limits<double>::infinity();
        rep.warn("requirement_failed");
        return rep;
    }
    if (detail::oscillation_risk(G)) rep.warn("ilt_oscillation_risk");
    // the numerical order estimate is rounded down a little to stay on the safe side
    const QuadResult q = detail::with_context("ilt path", [&] {
        return detail::integrate_density(G, v, std::floor(order * 100.0) / 100.0 - 0.01, detail::ilt_quad(opt.quad));
    });
    rep.path = EvalPath::ilt_quadrature;
    rep.value = static_cast<double>(kernel_traits(v.tag).equality_sign) * q.value;
    rep.err_est = q.err_est;
    return rep;
}

/// Riemann zeta via the oracle: sum_direct with an Euler-Maclaurin tail.
inline OracleResult zeta_oracle(cplx z, const EngineOptions& opt = {}) {
    const SummandSpec s = make_summand(Family::power, {.z = z});
    return sum_direct(s, series_shape(make_variant(KernelTag::base, 1.0)), opt.oracle_terms,
                      TailMethod::euler_maclaurin(4), opt.quad);
}

/// Coefficients c_n of sum_k (alpha k + a)^{-beta} = sum_n c_n, expanded in powers of a.
inline std::vector<cplx> power_series_expand(const SeriesProblem& p, int n_max, cplx alpha,
                                             const EngineOptions& opt = {}) {
    if (p.spec.family != Family::shifted_power)
        throw Error(ErrorCode::validation, "power_series_expand needs a shifted_power summand");
    const cplx a = p.spec.a(), beta = p.spec.beta();
    if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::validation, "shifted_power: |a| < 1 violated");
    if (!(beta.real() > 1.0)) throw Error(ErrorCode::validation, "shifted_power: Re(beta) > 1 violated");
    if (!(alpha.real() > 0.0)) throw Error(ErrorCode::validation, "Re(alpha) > 0 violated");
    if (n_max < 1) throw Error(ErrorCode::validation, "n_max must be positive");
    std::vector<cplx> c;
    cplx ratio = 1.0;  // Gamma(beta+n) / (Gamma(n+1) Gamma(beta))
    cplx apow = 1.0;
    for (int n = 0; n < n_max; ++n) {
        if (n > 0) {
            ratio *= (beta + (n - 1.0)) / static_cast<double>(n);
            apow *= a;
        }
        if (apow == 0.0) {
            c.push_back(0.0);
            continue;
        }
        const cplx zeta = zeta_oracle(beta + static_cast<double>(n), opt).value;
        const double sign = (n % 2) ? -1.0 : 1.0;
        c.push_back(sign * ratio * apow * zeta * std::exp(-(beta + static_cast<double>(n)) * std::log(alpha)));
    }
    return c;
}

inline std::vector<cplx> partial_sums(const std::vector<cplx>& c) {
    std::vector<cplx> s;
    cplx acc = 0.0;
    for (const cplx& v : c) s.push_back(acc += v);
    return s;
}

/// Binomial (Euler) average of the last n/2 partial sums; damps the sign-alternating remainder.
inline cplx averaged_partial_sum(const std::vector<cplx>& c) {
    const auto s = partial_sums(c);
    if (s.empty()) return 0.0;
    const int n = static_cast<int>(s.size());
    const int m = n / 2;
    cplx acc = 0.0;
    for (int j = 0; j <= m; ++j) acc += detail::binomial(m, j) * s[n - 1 - m + j];
    return acc / std::ldexp(1.0, m);
}

inline EvalReport zeta_identity_check(double a, double b, const EngineOptions& opt = {}) {
    if (a == 0.0) throw Error(ErrorCode::validation, "logtrig: a != 0 violated");
    if (!(b > -1.0)) throw Error(ErrorCode::validation, "logtrig: Re(b + ia + 1) > 0 violated");
    const SummandParams prm{.a = a, .b = b};
    const SummandSpec ssin = make_summand(Family::logtrig_sin, prm);
    const SummandSpec scos = make_summand(Family::logtrig_cos, prm);
    const EvalReport rs = evaluate_series(make_problem(ssin, KernelTag::alternating, 1.0), Method::automatic, opt);
    const EvalReport rc = evaluate_series(make_problem(scos, KernelTag::alternating, 1.0), Method::automatic, opt);

    const SummandSpec dir = make_summand(Family::power, {.z = cplx(b + 1.0, a)});
    const OracleResult eta =
        sum_alternating(dir, series_shape(make_variant(KernelTag::alternating, 1.0)), opt.oracle_terms);

    EvalReport rep;
    rep.path = rs.path;
    for (int i = 0; i < 3; ++i) {
        rep.checks[i].passed = rs.checks[i].passed && rc.checks[i].passed;
        rep.checks[i].diagnostic = rs.checks[i].diagnostic;
    }
    for (const auto& w : rs.warnings) rep.warn(w);
    for (const auto& w : rc.warnings) rep.warn(w);
    constexpr double tol = 1e-7;
    auto add = [&](const std::string& label, cplx v, cplx ref) {
        const double gap = std::abs(v - ref);
        rep.components.push_back({label, v, ref, gap, gap <= tol});
    };
    add("sin_part", rs.value, -eta.value.imag());
    add("cos_part", rc.value, eta.value.real());
    const cplx combined = rc.value - cplx(0.0, 1.0) * rs.value;
    add("combined", combined, eta.value);
    rep.value = combined;
    rep.err_est = rs.err_est + rc.err_est;
    rep.oracle_value = eta.value;
    rep.oracle_err = eta.err_est;
    double worst = 0.0;
    bool ok = rep.all_checks();
    for (const auto& c : rep.components) {
        worst = std::max(worst, *c.gap);
        ok = ok && c.passed;
    }
    rep.oracle_gap = worst;
    rep.verdict = ok;
    return rep;
}

/// f(alpha) from the integral path against the forward transform of the dual series F(x).
inline EvalReport loop_check(const SeriesProblem& p, const std::vector<cplx>& alpha_samples,
                             const std::vector<double>& x_samples, const EngineOptions& opt = {}) {
    const InverseTransform it = inverse_transform(p.spec);
    if (!it.has_density())
        throw Error(ErrorCode::structural,
                    std::string(kernel_name(p.variant.tag)) + ": loop check needs a density (point masses present)");
    const TypeBShape bshape = typeB_shape(p.variant);
    if (!bshape.numeric_evaluable)
        throw Error(ErrorCode::structural,
                    std::string(kernel_name(p.variant.tag)) + ": dual series is not numerically evaluable");

    constexpr double tol = 1e-6;
    EvalReport rep;
    rep.path = EvalPath::quadrature;
    bool ok = true;
    double worst = 0.0;

    // one guarded evaluation (divergence probe), then on-demand evaluations without it
    const double x_probe = x_samples.empty() ? 1.0 : x_samples.front();
    (void)typeB_eval(p.spec, bshape, x_probe, opt.oracle_terms, {true, opt.quad});
    TypeBOptions fast{false, opt.quad};

    for (double x : x_samples) {
        const OracleResult F = typeB_eval(p.spec, bshape, x, opt.oracle_terms, fast);
        rep.components.push_back({"F(x=" + std::to_string(x) + ")", F.value, std::nullopt, std::nullopt, true});
    }
    for (const cplx& alpha : alpha_samples) {
        const SeriesProblem pa = make_problem(p.spec, p.variant.tag, alpha, p.variant.beta, p.variant.gamma);
        const EvalReport fa = evaluate_series(pa, Method::quadrature, opt);
        for (int i = 0; i < 3; ++i) rep.checks[i].passed = rep.checks[i].passed && fa.checks[i].passed;
        const cplx f_int = detail::series_sign(pa) == 1.0 ? fa.value : -fa.value;  // back to the integral side
        auto F = [&](double x) { return typeB_eval(p.spec, bshape, x, opt.oracle_terms, fast).value; };
        QuadConfig qc = opt.quad;
        qc.rel_tol = std::max(qc.rel_tol, 1e-9);
        const QuadResult lf = laplace_forward(F, alpha, qc, {it.order, false});
        const double gap = std::abs(lf.value - f_int);
        const bool pass = gap <= tol && fa.all_checks();
        ok = ok && pass;
        worst = std::max(worst, gap);
        rep.components.push_back({"alpha=" + std::to_string(alpha.real()), f_int, lf.value, gap, pass});
        rep.err_est = std::max(rep.err_est, fa.err_est + lf.err_est);
    }
    if (!rep.components.empty()) rep.value = rep.components.back().value;
    rep.oracle_gap = worst;
    rep.verdict = ok;
    return rep;
}

} // namespace lapsum
