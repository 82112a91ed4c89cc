#pragma once

// Double-exponential quadrature on (0, inf), split in two panels:
//   (0, split]   tanh-sinh style map clustering nodes at t = 0,
//   [split, inf) exp-sinh style map x = split + exp(u - exp(-u)).
// Each level halves the step and reuses the previous nodes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lapsum/error.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

struct QuadConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double split_point = 1.0;
    int max_level = 12;
    double tail_cut = 720.0;
};

struct EndpointSingularity {
    double q = 0.0;        // integrand ~ t^q near 0
    bool log_flag = false; // ... times ln t
};

struct QuadResult {
    cplx value;
    double err_est = 0.0;
    int levels = 0;
    std::vector<double> level_errors;  // |S_L - S_{L-1}| per level, both panels summed
};

using Integrand = std::function<cplx(double)>;

namespace detail {

inline constexpr double quad_h0 = 0.5;

struct Node {
    double x;
    double w;
};

inline Node head_node(double u, double s) {
    const double v = pi * std::sinh(u);
    const double ch = pi * std::cosh(u);
    if (v < 0.0) {
        const double e = std::exp(v);
        const double d = 1.0 + e;
        return {s * e / d, s * ch * e / (d * d)};
    }
    const double e = std::exp(-v);
    const double d = 1.0 + e;
    return {s / d, s * ch * e / (d * d)};
}

inline Node tail_node(double u, double s) {
    const double eu = std::exp(-u);
    const double g = std::exp(u - eu);
    return {s + g, g * (1.0 + eu)};
}

inline void check_finite(cplx v, double x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegrandError(x, "integrand returned a non-finite value at t=" + std::to_string(x));
}

struct PanelState {
    double u_lo = 0, u_hi = 0;
    cplx sum = 0.0;       // sum of f(x) w over all nodes so far (unscaled by h)
    double abs_sum = 0.0;
    cplx estimate = 0.0;
    double err = 0.0;
};

template <class Map>
void add_level(PanelState& p, const Integrand& f, Map map, int level) {
    const double h = quad_h0 / std::ldexp(1.0, level);
    const long jlo = static_cast<long>(std::ceil(p.u_lo / h));
    const long jhi = static_cast<long>(std::floor(p.u_hi / h));
    for (long j = jlo; j <= jhi; ++j) {
        if (level > 0 && j % 2 == 0) continue;
        const Node n = map(j * h);
        if (n.w == 0.0 || !(n.x > 0.0)) continue;
        const cplx fx = f(n.x);
        check_finite(fx, n.x);
        p.sum += fx * n.w;
        p.abs_sum += std::abs(fx) * n.w;
    }
    const cplx prev = p.estimate;
    p.estimate = h * p.sum;
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * h * p.abs_sum;
    p.err = (level == 0 ? std::abs(p.estimate) : std::abs(p.estimate - prev)) + floor;
}

inline double head_lower_u(EndpointSingularity sing, double s) {
    const double q = sing.log_flag ? sing.q - 0.05 : sing.q;
    double tmin = std::pow(10.0, -40.0 / (1.0 + q));
    tmin = std::clamp(tmin, 1e-300, 1e-20);
    return std::asinh(std::log(tmin / s) / pi);
}

// Upper end of the tail panel: walk out until |f w| is negligible.
inline double tail_upper_u(const Integrand& f, double s) {
    double scale = 0.0;
    int quiet = 0;
    for (double u = 0.0; u <= 30.0; u += quad_h0) {
        const Node n = tail_node(u, s);
        const cplx fx = f(n.x);
        check_finite(fx, n.x);
        const double m = std::abs(fx) * n.w;
        scale = std::max(scale, m);
        if (m <= 1e-20 * scale || m == 0.0) {
            if (++quiet >= 2) return u;
        } else {
            quiet = 0;
        }
    }
    throw Error(ErrorCode::accuracy, "integrand does not decay on the tail panel");
}

} // namespace detail

/// Integrates f over (0, split] only, with the same endpoint treatment as the head panel.
inline QuadResult integrate_head(const Integrand& f, EndpointSingularity sing, const QuadConfig& cfg,
                                 double upper) {
    if (!(sing.q > -1.0))
        throw Error(ErrorCode::convergence, "non-integrable endpoint singularity t^" + std::to_string(sing.q));
    detail::PanelState p;
    p.u_lo = detail::head_lower_u(sing, upper);
    p.u_hi = std::asinh(45.0 / pi);
    auto map = [upper](double u) { return detail::head_node(u, upper); };
    QuadResult r;
    for (int L = 0; L <= cfg.max_level; ++L) {
        detail::add_level(p, f, map, L);
        r.level_errors.push_back(p.err);
        r.levels = L;
        if (L >= 3 && p.err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(p.estimate))) {
            r.value = p.estimate;
            r.err_est = p.err;
            return r;
        }
    }
    throw AccuracyError(p.estimate, p.err, "quadrature did not converge within max_level");
}

inline QuadResult integrate_semiinf(const Integrand& f, EndpointSingularity sing, const QuadConfig& cfg = {}) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || !(cfg.split_point > 0.0) || cfg.max_level < 3)
        throw Error(ErrorCode::validation, "invalid quadrature configuration");
    if (!(sing.q > -1.0))
        throw Error(ErrorCode::convergence, "non-integrable endpoint singularity t^" + std::to_string(sing.q));
    const double s = cfg.split_point;
    detail::PanelState head, tail;
    head.u_lo = detail::head_lower_u(sing, s);
    head.u_hi = std::asinh(45.0 / pi);
    tail.u_lo = -4.5;
    tail.u_hi = detail::tail_upper_u(f, s);
    auto hmap = [s](double u) { return detail::head_node(u, s); };
    auto tmap = [s](double u) { return detail::tail_node(u, s); };
    QuadResult r;
    bool head_done = false, tail_done = false;
    for (int L = 0; L <= cfg.max_level; ++L) {
        if (!head_done) detail::add_level(head, f, hmap, L);
        if (!tail_done) detail::add_level(tail, f, tmap, L);
        const cplx total = head.estimate + tail.estimate;
        const double err = head.err + tail.err;
        r.level_errors.push_back(err);
        r.levels = L;
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (L >= 3) {
            head_done = head_done || head.err <= 0.5 * tol;
            tail_done = tail_done || tail.err <= 0.5 * tol;
            if (err <= tol) {
                r.value = total;
                r.err_est = err;
                return r;
            }
        }
    }
    throw AccuracyError(head.estimate + tail.estimate, head.err + tail.err,
                        "quadrature did not converge within max_level");
}

/// integral_0^inf exp(-alpha x) F(x) dx; `sing` describes F near x = 0.
inline QuadResult laplace_forward(const std::function<cplx(double)>& F, cplx alpha, const QuadConfig& cfg = {},
                                  EndpointSingularity sing = {}) {
    if (!(alpha.real() > 0.0)) throw Error(ErrorCode::validation, "laplace_forward requires Re(alpha) > 0");
    const double cut = cfg.tail_cut;
    auto f = [&](double x) -> cplx {
        const cplx ax = alpha * x;
        if (ax.real() > cut) return 0.0;
        return std::exp(-ax) * F(x);
    };
    return integrate_semiinf(f, sing, cfg);
}

} // namespace lapsum
