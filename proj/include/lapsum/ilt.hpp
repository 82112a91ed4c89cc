#pragma once

// Fixed-Talbot numerical inverse Laplace transform.

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lapsum/error.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

using Transform = std::function<cplx(cplx)>;

struct TalbotNode {
    cplx s;
    cplx weight;  // already includes exp(t s) and the contour derivative
};

struct TalbotPlan {
    int M = 32;
    double t = 1.0;
    double r = 0.0;
    std::vector<TalbotNode> nodes;
};

/// Nodes over theta_k = k pi / M, k = -(M-1) .. (M-1), on s(theta) = r theta (cot theta + i).
inline TalbotPlan make_talbot_plan(double t, int M = 32) {
    if (!(t > 0.0)) throw Error(ErrorCode::validation, "talbot: t must be positive");
    if (M < 8 || M % 2 != 0) throw Error(ErrorCode::validation, "talbot: M must be even and >= 8");
    TalbotPlan p;
    p.M = M;
    p.t = t;
    p.r = 2.0 * M / (5.0 * t);
    const double r = p.r;
    p.nodes.reserve(2 * M - 1);
    p.nodes.push_back({cplx(r), (r / (2.0 * M)) * std::exp(r * t)});
    for (int k = 1; k < M; ++k) {
        const double th = k * pi / M;
        const double cot = 1.0 / std::tan(th);
        const double sigma = th + (th * cot - 1.0) * cot;
        const cplx s(r * th * cot, r * th);
        const cplx w = (r / (2.0 * M)) * std::exp(t * s) * cplx(1.0, sigma);
        p.nodes.push_back({s, w});
        // mirrored node: s -> conj(s), sigma -> -sigma
        p.nodes.push_back({std::conj(s), (r / (2.0 * M)) * std::exp(t * std::conj(s)) * cplx(1.0, -sigma)});
    }
    return p;
}

namespace detail {

inline bool finite_c(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// |g| must fall off along a ray into the right half-plane; a transform that
// stays flat or grows has no ordinary inverse.
inline void decay_probe(const Transform& g, double r) {
    double prev = -1.0;
    double first = 0.0;
    for (int j = 1; j <= 3; ++j) {
        const double scale = std::pow(10.0, 2.0 * j);
        const cplx s(r, r * scale);
        const cplx v = g(s);
        if (!finite_c(v)) throw PoleError(s, "talbot: transform not finite on decay probe");
        const double m = std::abs(v);
        if (j == 1) first = m;
        if (prev >= 0.0 && m > prev && m > 1e-300) {
            throw Error(ErrorCode::unsuitable_transform, "talbot: transform grows away from the origin");
        }
        prev = m;
    }
    if (first > 0.0 && prev > 0.5 * first)
        throw Error(ErrorCode::unsuitable_transform, "talbot: transform does not decay");
}

} // namespace detail

inline cplx talbot_apply(const Transform& g, const TalbotPlan& plan) {
    cplx sum = 0.0;
    for (const auto& n : plan.nodes) {
        const cplx v = g(n.s);
        if (!detail::finite_c(v)) throw PoleError(n.s, "talbot: transform singular on the contour");
        sum += n.weight * v;
    }
    return sum;
}

inline cplx talbot_ilt(const Transform& g, double t, int M = 32) {
    const TalbotPlan plan = make_talbot_plan(t, M);
    detail::decay_probe(g, plan.r);
    return talbot_apply(g, plan);
}

inline double ilt_accuracy_probe(const Transform& g, double t, int M = 32) {
    return std::abs(talbot_ilt(g, t, M) - talbot_ilt(g, t, M / 2));
}

} // namespace lapsum
