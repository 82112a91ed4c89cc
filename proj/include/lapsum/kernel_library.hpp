#pragma once

// The 24 kernels K(t; alpha, beta, gamma) and the series each one generates.
//
// Every kernel is written in terms of x = exp(-rate * t) so that large t never
// overflows. The generated series is
//     integral G(t) K(t) dt = s * sum_{k >= start} w(k) g(slope*k + offset) + c0 * g(0).

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "lapsum/error.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

struct KernelVariant {
    KernelTag tag = KernelTag::base;
    cplx alpha = 1.0;
    cplx beta = 0.0;
    cplx gamma = 0.0;
    double tail_cut = 720.0;
};

struct SeriesShape {
    int index_start = 1;
    int constant_coefficient = 0;
    int equality_sign = +1;
    std::function<cplx(double)> weight;  // includes the alternating sign
    cplx slope = 1.0;
    cplx offset = 0.0;
    bool alternating = false;
    double weight_power = 0.0;   // |w(k)| ~ k^weight_power * weight_ratio^k
    double weight_ratio = 1.0;
    bool factorial = false;

    cplx argument(double k) const { return slope * k + offset; }
    cplx term_weight(double k) const { return static_cast<double>(equality_sign) * weight(k); }
};

/// Dual series F(x) = prefactor(x) * sum_{k>=1} weight(k, x) G(x / scale(k)) [+ delta_term * delta(x) g(0)].
struct TypeBShape {
    bool alternating = false;
    std::function<cplx(double, double)> weight;
    std::function<cplx(double)> scale;
    std::function<cplx(double)> prefactor;
    std::optional<cplx> delta_term;
    bool numeric_evaluable = true;
};

struct SmallTOrder {
    double q;
    bool log_flag;
};

namespace detail {

inline cplx cexpm1(cplx z) {
    const double a = z.real(), b = z.imag();
    if (b == 0.0) return std::expm1(a);
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

inline double alt_sign(double k) {
    if (std::abs(k) > 9e15) return 1.0;
    return (static_cast<long long>(std::llround(k)) % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
}

inline double inv_factorial(double n) { return std::exp(-std::lgamma(n + 1.0)); }

// (2n-1)!!/(2n)!! = Gamma(n + 1/2) / (sqrt(pi) n!)
inline double central_binomial_weight(double n) {
    return std::exp(std::lgamma(n + 0.5) - std::lgamma(n + 1.0) - 0.5 * std::log(pi));
}

inline bool is_complex_variant(KernelTag t) {
    return t == KernelTag::hyp_inv_sine_complex || t == KernelTag::hyp_inv_cosine_complex;
}

struct PoleLocus {
    cplx rate;     // poles where exp(rate * t) == target
    cplx target;
};

inline std::optional<PoleLocus> pole_locus(const KernelVariant& v) {
    const cplx a = v.alpha, b = v.beta;
    switch (v.tag) {
    case KernelTag::base:
    case KernelTag::shifted:
    case KernelTag::differentiated:
    case KernelTag::integrated:
    case KernelTag::square_root: return PoleLocus{a, 1.0};
    case KernelTag::alternating:
    case KernelTag::shifted_alternating:
    case KernelTag::differentiated_alternating:
    case KernelTag::integrated_alternating:
    case KernelTag::square_root_alternating: return PoleLocus{a, -1.0};
    case KernelTag::power_factor: return PoleLocus{a, 1.0 / v.gamma};
    case KernelTag::power_factor_alternating: return PoleLocus{a, -1.0 / v.gamma};
    case KernelTag::exp_factor: return PoleLocus{a, std::exp(-b)};
    case KernelTag::exp_factor_alternating: return PoleLocus{a, -std::exp(-b)};
    case KernelTag::added_constant: return PoleLocus{a - b, 1.0};
    case KernelTag::added_constant_alternating: return PoleLocus{a - b, -1.0};
    case KernelTag::hyp_inv_sine: return PoleLocus{2.0 * a, 1.0};
    case KernelTag::hyp_inv_cosine: return PoleLocus{2.0 * a, -1.0};
    case KernelTag::hyp_inv_sine_complex: return PoleLocus{2.0 * (b + cplx(0, 1) * a), 1.0};
    case KernelTag::hyp_inv_cosine_complex: return PoleLocus{2.0 * (b + cplx(0, 1) * a), -1.0};
    default: return std::nullopt;
    }
}

// Pole closest to t, ignoring the t = 0 root of target == 1 (an endpoint
// singularity, not an interior pole).
inline std::optional<cplx> nearest_pole(const PoleLocus& p, cplx t) {
    const cplx L = std::log(p.target);
    // (L + 2 pi i n) / rate ~ t  =>  n ~ (rate t - L) / (2 pi i)
    const double nstar = ((p.rate * t - L) / cplx(0.0, 2.0 * pi)).real();
    std::optional<cplx> best;
    for (double n : {std::floor(nstar), std::ceil(nstar)}) {
        if (n == 0.0 && p.target == 1.0) continue;
        const cplx tn = (L + cplx(0.0, 2.0 * pi * n)) / p.rate;
        if (!best || std::abs(tn - t) < std::abs(*best - t)) best = tn;
    }
    return best;
}

} // namespace detail

inline KernelVariant make_variant(KernelTag tag, cplx alpha, cplx beta = 0.0, cplx gamma = 0.0) {
    const std::string name(kernel_name(tag));
    auto fail = [&](const std::string& why) { return Error(ErrorCode::validation, name + ": " + why + " violated"); };
    if (alpha == 0.0) throw fail("alpha != 0");
    const bool real_negative = alpha.imag() == 0.0 && alpha.real() < 0.0;
    if (!(alpha.real() > 0.0) && !real_negative) throw fail("Re(alpha) > 0");
    switch (tag) {
    case KernelTag::power_factor:
    case KernelTag::power_factor_alternating:
        if (!(std::abs(gamma) > 1.0)) throw fail("|gamma| > 1");
        break;
    case KernelTag::exp_factor:
    case KernelTag::exp_factor_alternating:
        if (!(beta.real() > 0.0)) throw fail("Re(beta) > 0");
        break;
    case KernelTag::added_constant:
    case KernelTag::added_constant_alternating:
        if (!(std::abs(alpha) > std::abs(beta))) throw fail("|alpha| > |beta|");
        if (!((alpha - beta).real() > 0.0)) throw fail("Re(alpha - beta) > 0");
        break;
    case KernelTag::hyp_inv_sine_complex:
    case KernelTag::hyp_inv_cosine_complex:
        if (!(beta.real() > 0.0)) throw fail("Re(beta) > 0");
        if (!((beta + cplx(0, 1) * alpha).real() > 0.0)) throw fail("Re(beta + i alpha) > 0");
        break;
    default: break;
    }
    KernelVariant v{tag, alpha, beta, gamma, 720.0};
    // reject pole loci that cross the positive real axis
    if (auto p = detail::pole_locus(v)) {
        const cplx L = std::log(p->target);
        const cplx r = p->rate;
        if (r.real() != 0.0) {
            // Im((L + 2 pi i n) conj(r)) = 0
            const double nstar = (L.real() * r.imag() / r.real() - L.imag()) / (2.0 * pi);
            for (double n : {std::floor(nstar), std::ceil(nstar)}) {
                const cplx tn = (L + cplx(0.0, 2.0 * pi * n)) / r;
                if (std::abs(tn.imag()) <= 1e-12 * std::abs(tn) && tn.real() > 0.0)
                    throw fail("no kernel pole on the positive real axis");
            }
        }
    }
    return v;
}

inline SmallTOrder smallt_order(const KernelVariant& v) {
    const KernelTraits tr = kernel_traits(v.tag);
    return {tr.small_t_order, tr.small_t_log};
}

/// Exponential decay rate of |K(t)| as t -> inf (0 when K tends to a constant).
inline double kernel_decay_rate(const KernelVariant& v) {
    switch (v.tag) {
    case KernelTag::shifted:
    case KernelTag::shifted_alternating: return (v.alpha + v.beta).real();
    case KernelTag::differentiated:
    case KernelTag::differentiated_alternating: return 2.0 * v.alpha.real();
    case KernelTag::hyp_inv_sine_complex:
    case KernelTag::hyp_inv_cosine_complex: return (v.beta + cplx(0, 1) * v.alpha).real();
    case KernelTag::hyp_cosine:
    case KernelTag::square_root:
    case KernelTag::square_root_alternating:
    case KernelTag::exponential:
    case KernelTag::neg_exponential: return 0.0;
    default: return v.alpha.real();
    }
}

inline cplx kernel_eval(const KernelVariant& v, cplx t) {
    if (auto p = detail::pole_locus(v)) {
        if (t == 0.0 && p->target == 1.0)
            throw PoleError(0.0, std::string(kernel_name(v.tag)) + ": pole at t=0");
        if (auto tn = detail::nearest_pole(*p, t)) {
            if (std::abs(*tn - t) <= 1e-12 * std::max(1.0, std::abs(*tn)))
                throw PoleError(*tn, std::string(kernel_name(v.tag)) + ": kernel pole");
        }
    }
    const cplx I(0.0, 1.0);
    const bool cx = detail::is_complex_variant(v.tag);
    const cplx rate = cx ? v.beta + I * v.alpha : v.alpha;
    const cplx rt = rate * t;
    const bool far = rt.real() > v.tail_cut;
    const cplx x = far ? cplx(0.0) : std::exp(-rt);
    auto one_minus = [&](cplx r) -> cplx {  // 1 - exp(-r t)
        const cplx u = r * t;
        if (u.real() > v.tail_cut) return 1.0;
        return -detail::cexpm1(-u);
    };
    const cplx em = one_minus(rate);
    cplx k;
    switch (v.tag) {
    case KernelTag::base: k = x / em; break;
    case KernelTag::alternating: k = x / (1.0 + x); break;
    case KernelTag::shifted: k = std::exp(-v.beta * t) * x / em; break;
    case KernelTag::shifted_alternating: k = std::exp(-v.beta * t) * x / (1.0 + x); break;
    case KernelTag::power_factor: k = x / (v.gamma - x); break;
    case KernelTag::power_factor_alternating: k = x / (v.gamma + x); break;
    case KernelTag::exp_factor: {
        const cplx y = x * std::exp(-v.beta);
        k = y / (1.0 - y);
        break;
    }
    case KernelTag::exp_factor_alternating: {
        const cplx y = x * std::exp(-v.beta);
        k = y / (1.0 + y);
        break;
    }
    case KernelTag::differentiated: k = (x / em) * (x / em); break;
    case KernelTag::differentiated_alternating: k = (x / (1.0 + x)) * (x / (1.0 + x)); break;
    case KernelTag::integrated: k = std::log(em); break;
    case KernelTag::integrated_alternating: k = std::log(1.0 + x); break;
    case KernelTag::added_constant: k = x / one_minus(v.alpha - v.beta); break;
    case KernelTag::added_constant_alternating: {
        const cplx u = (v.alpha - v.beta) * t;
        k = u.real() > v.tail_cut ? x : x / (1.0 + std::exp(-u));
        break;
    }
    case KernelTag::hyp_inv_sine:
    case KernelTag::hyp_inv_sine_complex: k = x / one_minus(2.0 * rate); break;
    case KernelTag::hyp_inv_cosine:
    case KernelTag::hyp_inv_cosine_complex: k = x / (1.0 + x * x); break;
    case KernelTag::hyp_sine: k = std::sinh(x); break;
    case KernelTag::hyp_cosine: k = std::cosh(x); break;
    case KernelTag::square_root: k = 1.0 / std::sqrt(em); break;
    case KernelTag::square_root_alternating: k = 1.0 / std::sqrt(1.0 + x); break;
    case KernelTag::exponential: k = std::exp(x); break;
    case KernelTag::neg_exponential: k = std::exp(-x); break;
    }
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
        throw PoleError(t, std::string(kernel_name(v.tag)) + ": non-finite kernel value");
    return k;
}

inline SeriesShape series_shape(const KernelVariant& v) {
    using detail::alt_sign;
    const KernelTraits tr = kernel_traits(v.tag);
    const cplx a = v.alpha, b = v.beta, g = v.gamma;
    SeriesShape s;
    s.index_start = 1;
    s.constant_coefficient = tr.constant_term ? 1 : 0;
    s.equality_sign = tr.equality_sign;
    s.alternating = tr.alternating;
    s.weight_power = tr.weight_power;
    s.factorial = tr.factorial;
    s.slope = a;
    s.offset = 0.0;
    switch (v.tag) {
    case KernelTag::base: s.weight = [](double) { return cplx(1.0); }; break;
    case KernelTag::alternating: s.weight = [](double k) { return cplx(alt_sign(k)); }; break;
    case KernelTag::shifted:
        s.weight = [](double) { return cplx(1.0); };
        s.offset = b;
        break;
    case KernelTag::shifted_alternating:
        s.weight = [](double k) { return cplx(alt_sign(k)); };
        s.offset = b;
        break;
    case KernelTag::power_factor: {
        const cplx lg = std::log(g);
        s.weight = [lg](double k) { return std::exp(-k * lg); };
        s.weight_ratio = 1.0 / std::abs(g);
        break;
    }
    case KernelTag::power_factor_alternating: {
        const cplx lg = std::log(g);
        s.weight = [lg](double k) { return alt_sign(k) * std::exp(-k * lg); };
        s.weight_ratio = 1.0 / std::abs(g);
        break;
    }
    case KernelTag::exp_factor:
        s.weight = [b](double k) { return std::exp(-k * b); };
        s.weight_ratio = std::exp(-b.real());
        break;
    case KernelTag::exp_factor_alternating:
        s.weight = [b](double k) { return alt_sign(k) * std::exp(-k * b); };
        s.weight_ratio = std::exp(-b.real());
        break;
    case KernelTag::differentiated:
        s.weight = [](double k) { return cplx(k); };
        s.offset = a;
        break;
    case KernelTag::differentiated_alternating:
        s.weight = [](double k) { return cplx(alt_sign(k) * k); };
        s.offset = a;
        break;
    case KernelTag::integrated: s.weight = [](double k) { return cplx(1.0 / k); }; break;
    case KernelTag::integrated_alternating: s.weight = [](double k) { return cplx(alt_sign(k) / k); }; break;
    case KernelTag::added_constant:
        s.weight = [](double) { return cplx(1.0); };
        s.slope = a - b;
        s.offset = b;
        break;
    case KernelTag::added_constant_alternating:
        s.weight = [](double k) { return cplx(alt_sign(k)); };
        s.slope = a - b;
        s.offset = b;
        break;
    case KernelTag::hyp_inv_sine:
        s.weight = [](double) { return cplx(1.0); };
        s.slope = 2.0 * a;
        s.offset = -a;
        break;
    case KernelTag::hyp_inv_cosine:
        s.weight = [](double k) { return cplx(alt_sign(k)); };
        s.slope = 2.0 * a;
        s.offset = -a;
        break;
    case KernelTag::hyp_inv_sine_complex:
    case KernelTag::hyp_inv_cosine_complex: {
        const cplx w = b + cplx(0, 1) * a;
        if (v.tag == KernelTag::hyp_inv_sine_complex)
            s.weight = [](double) { return cplx(1.0); };
        else
            s.weight = [](double k) { return cplx(alt_sign(k)); };
        s.slope = 2.0 * w;
        s.offset = -w;
        break;
    }
    case KernelTag::hyp_sine:
        s.weight = [](double k) { return cplx(detail::inv_factorial(2.0 * k - 1.0)); };
        s.slope = 2.0 * a;
        s.offset = -a;
        break;
    case KernelTag::hyp_cosine:
        s.weight = [](double k) { return cplx(detail::inv_factorial(2.0 * k)); };
        s.slope = 2.0 * a;
        break;
    case KernelTag::square_root: s.weight = [](double k) { return cplx(detail::central_binomial_weight(k)); }; break;
    case KernelTag::square_root_alternating:
        s.weight = [](double k) { return cplx(-alt_sign(k) * detail::central_binomial_weight(k)); };
        break;
    case KernelTag::exponential: s.weight = [](double k) { return cplx(detail::inv_factorial(k)); }; break;
    case KernelTag::neg_exponential:
        s.weight = [](double k) { return cplx(-alt_sign(k) * detail::inv_factorial(k)); };
        break;
    }
    return s;
}

/// (2n-1)!!/(2n)!! by the upward recurrence; cross-check for the closed form used in series_shape.
inline double double_factorial_ratio(int n) {
    double w = 1.0;
    for (int j = 1; j <= n; ++j) w *= (2.0 * j - 1.0) / (2.0 * j);
    return w;
}

inline TypeBShape typeB_shape(const KernelVariant& v) {
    const SeriesShape s = series_shape(v);
    TypeBShape out;
    out.alternating = s.alternating;
    out.prefactor = [](double) { return cplx(1.0); };
    if (s.constant_coefficient) out.delta_term = cplx(static_cast<double>(s.constant_coefficient));

    // arg(k) = alpha * m(k) + rest(k); the B-side samples G at x / m(k).
    const cplx I(0.0, 1.0);
    std::function<cplx(double)> m;
    std::function<cplx(double)> rest;
    switch (v.tag) {
    case KernelTag::shifted:
    case KernelTag::shifted_alternating: {
        const cplx b = v.beta;
        m = [](double k) { return cplx(k); };
        rest = [b](double) { return b; };
        break;
    }
    case KernelTag::differentiated:
    case KernelTag::differentiated_alternating:
        m = [](double k) { return cplx(k + 1.0); };
        rest = [](double) { return cplx(0.0); };
        break;
    case KernelTag::added_constant:
    case KernelTag::added_constant_alternating: {
        const cplx b = v.beta;
        m = [](double k) { return cplx(k); };
        rest = [b](double) { return b; };  // e^{beta x} goes to the prefactor
        out.prefactor = [b](double x) { return std::exp(b * x); };
        break;
    }
    case KernelTag::hyp_inv_sine:
    case KernelTag::hyp_inv_cosine:
    case KernelTag::hyp_sine:
        m = [](double k) { return cplx(2.0 * k - 1.0); };
        rest = [](double) { return cplx(0.0); };
        break;
    case KernelTag::hyp_inv_sine_complex:
    case KernelTag::hyp_inv_cosine_complex: {
        const cplx b = v.beta;
        m = [I](double k) { return I * (2.0 * k - 1.0); };
        rest = [b](double k) { return b * (2.0 * k - 1.0); };
        break;
    }
    case KernelTag::hyp_cosine:
        m = [](double k) { return cplx(2.0 * k); };
        rest = [](double) { return cplx(0.0); };
        break;
    default:
        m = [](double k) { return cplx(k); };
        rest = [](double) { return cplx(0.0); };
        break;
    }
    const auto w = s.weight;
    const double sign = s.equality_sign;
    out.scale = m;
    out.weight = [w, m, rest, sign](double k, double x) {
        const cplx mk = m(k);
        return sign * w(k) * std::exp(-rest(k) * x / mk) / mk;
    };
    const bool complex_scale = detail::is_complex_variant(v.tag);
    out.numeric_evaluable = !out.delta_term && !complex_scale;
    return out;
}

/// s * sum w(k) exp(-c arg(k)) + c0, truncated once terms fall below `cutoff`.
/// This is the series side for g(k) = exp(-c k), whose inverse transform is a unit mass at c.
inline cplx generating_sum(const KernelVariant& v, cplx c, double cutoff = 1e-17, int max_terms = 1000000) {
    const SeriesShape s = series_shape(v);
    cplx sum = 0.0;
    int small_run = 0;
    for (int k = s.index_start; k < s.index_start + max_terms; ++k) {
        const cplx term = s.weight(k) * std::exp(-c * s.argument(k));
        sum += term;
        if (std::abs(term) < cutoff) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    return static_cast<double>(s.equality_sign) * sum + static_cast<double>(s.constant_coefficient);
}

} // namespace lapsum
