#pragma once

// Summand families g(x), their parameter ranges and closed-form inverse
// Laplace transforms G(t).

#include <bitset>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lapsum/complex_gamma.hpp"
#include "lapsum/error.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

struct SummandParams {
    std::optional<cplx> z;
    std::optional<cplx> a;
    std::optional<cplx> b;
    std::optional<cplx> beta;
    std::optional<cplx> c;
};

struct SummandSpec {
    Family family = Family::power;
    SummandParams params;
    std::bitset<kernel_count> admissible;  // kernels this summand may legally pair with

    bool admits(KernelTag k) const { return admissible.test(kernel_index(k)); }
    cplx z() const { return params.z.value_or(0.0); }
    cplx a() const { return params.a.value_or(0.0); }
    cplx b() const { return params.b.value_or(0.0); }
    cplx beta() const { return params.beta.value_or(0.0); }
    cplx c() const { return params.c.value_or(0.0); }
};

struct PointMass {
    cplx location;
    cplx weight;
};

struct InverseTransform {
    std::function<cplx(cplx)> density;  // empty when G is purely distributional
    double order = 0.0;                 // density ~ C t^order as t -> 0+
    double decay_rate = 0.0;            // density ~ e^{-decay_rate t} as t -> inf
    std::vector<PointMass> point_masses;
    bool log_factor = false;

    bool has_density() const { return static_cast<bool>(density); }
    bool has_point_masses() const { return !point_masses.empty(); }
};

namespace detail {

inline std::string fmt_cplx(cplx v) {
    std::ostringstream os;
    os.precision(6);
    os << v.real();
    if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return os.str();
}

inline void require_params(Family f, const SummandParams& p, std::initializer_list<const char*> names) {
    auto has = [&](std::string_view n) -> bool {
        if (n == "z") return p.z.has_value();
        if (n == "a") return p.a.has_value();
        if (n == "b") return p.b.has_value();
        if (n == "beta") return p.beta.has_value();
        if (n == "c") return p.c.has_value();
        return false;
    };
    for (const char* n : names)
        if (!has(n))
            throw Error(ErrorCode::validation, std::string(family_name(f)) + ": missing parameter " + n);
    for (const char* n : {"z", "a", "b", "beta", "c"}) {
        bool listed = false;
        for (const char* m : names) listed = listed || std::string_view(n) == m;
        if (!listed && has(n))
            throw Error(ErrorCode::validation, std::string(family_name(f)) + ": unexpected parameter " + n);
    }
}

inline void check(bool ok, Family f, const std::string& condition) {
    if (!ok) throw Error(ErrorCode::validation, std::string(family_name(f)) + ": " + condition + " violated");
}

inline bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

} // namespace detail

/// Small-t order of the density and decay rate, without building closures.
inline double density_order(const SummandSpec& s) {
    switch (s.family) {
    case Family::power: return s.z().real() - 1.0;
    case Family::shifted_power: return s.beta().real() - 1.0;
    case Family::logtrig_sin:
    case Family::logtrig_cos: return s.b().real() - std::abs(s.a().imag());
    default: return 0.0;
    }
}

inline bool has_density(Family f) {
    return f == Family::power || f == Family::shifted_power || f == Family::logtrig_sin ||
           f == Family::logtrig_cos;
}

/// g(0) when finite.
inline std::optional<cplx> summand_at_zero(const SummandSpec& s) {
    switch (s.family) {
    case Family::power:
    case Family::logtrig_sin:
    case Family::logtrig_cos: return std::nullopt;
    case Family::shifted_power:
        if (s.a() == 0.0) return std::nullopt;
        return std::exp(-s.beta() * std::log(s.a()));
    case Family::exponential: return 1.0;
    case Family::cosine: return 1.0;
    case Family::sine: return 0.0;
    }
    return std::nullopt;
}

/// Size of g(slope*k + offset) as k -> inf.
inline SeriesGrowth family_growth(const SummandSpec& s, cplx slope) {
    SeriesGrowth g;
    switch (s.family) {
    case Family::power: g.power = -s.z().real(); break;
    case Family::shifted_power: g.power = -s.beta().real(); break;
    case Family::exponential: g.ratio = std::exp(-(s.c() * slope).real()); break;
    case Family::cosine:
    case Family::sine:
        g.ratio = std::exp(std::abs(slope.imag()));
        g.oscillating = true;
        break;
    case Family::logtrig_sin:
    case Family::logtrig_cos: g.power = -(s.b().real() + 1.0) + std::abs(s.a().imag()); break;
    }
    return g;
}

namespace detail {

// Kernel admissibility with unit real frequency: convergence class of the
// generated series, finiteness of g(0) for constant-term kernels, and
// integrability of density x kernel at t = 0.
inline std::bitset<kernel_count> classify_admissible(const SummandSpec& s) {
    std::bitset<kernel_count> bits;
    const auto g0 = summand_at_zero(s);
    for (KernelTag k : all_kernels) {
        const KernelTraits tr = kernel_traits(k);
        SeriesGrowth g = family_growth(s, 1.0);
        g.power += tr.weight_power;
        g.factorial = g.factorial || tr.factorial;
        g.alternating = tr.alternating;
        if (tr.geometric) g.ratio *= 0.5;
        if (classify_growth(g) == SeriesClass::divergent) continue;
        if (tr.constant_term) {
            if (!g0) continue;
            if (has_density(s.family) && s.family == Family::shifted_power && s.a().real() <= 0.0) continue;
        }
        if (has_density(s.family)) {
            const double pq = density_order(s) + tr.small_t_order;
            if (!(pq > -1.0)) continue;
        }
        bits.set(kernel_index(k));
    }
    return bits;
}

} // namespace detail

inline SummandSpec make_summand(Family family, const SummandParams& params) {
    using detail::check;
    SummandSpec s{family, params, {}};
    switch (family) {
    case Family::power:
        detail::require_params(family, params, {"z"});
        check(s.z().real() > 0.0, family, "Re(z) > 0");
        break;
    case Family::shifted_power:
        detail::require_params(family, params, {"a", "beta"});
        check(std::abs(s.a()) < 1.0, family, "|a| < 1");
        check(s.beta().real() > 1.0, family, "Re(beta) > 1");
        break;
    case Family::exponential:
        detail::require_params(family, params, {"c"});
        check(s.c().imag() == 0.0, family, "c real");
        check(s.c().real() > 0.0, family, "c > 0");
        break;
    case Family::cosine:
    case Family::sine: detail::require_params(family, params, {}); break;
    case Family::logtrig_sin:
    case Family::logtrig_cos: {
        detail::require_params(family, params, {"a", "b"});
        const cplx ia = cplx(0.0, 1.0) * s.a();
        check(s.a() != 0.0, family, "a != 0");
        check(std::abs(s.a().imag()) < 1.0, family, "|Im(a)| < 1");
        check((s.b() + ia + 1.0).real() > 0.0 && (s.b() - ia + 1.0).real() > 0.0, family,
              "Re(b + ia + 1) > 0");
        break;
    }
    }
    for (auto* v : {&s.params.z, &s.params.a, &s.params.b, &s.params.beta, &s.params.c})
        if (*v && !detail::finite(**v))
            throw Error(ErrorCode::validation, std::string(family_name(family)) + ": non-finite parameter");
    s.admissible = detail::classify_admissible(s);
    return s;
}

inline cplx summand_eval(const SummandSpec& s, cplx x) {
    auto domain = [&](const std::string& why) {
        return Error(ErrorCode::domain,
                     std::string(family_name(s.family)) + " at x=" + detail::fmt_cplx(x) + ": " + why);
    };
    switch (s.family) {
    case Family::power:
        if (x == 0.0) throw domain("pole at 0");
        return std::exp(-s.z() * std::log(x));
    case Family::shifted_power: {
        const cplx u = x + s.a();
        if (u == 0.0) throw domain("pole at -a");
        return std::exp(-s.beta() * std::log(u));
    }
    case Family::exponential: return std::exp(-s.c() * x);
    case Family::cosine: return std::cos(x);
    case Family::sine: return std::sin(x);
    case Family::logtrig_sin:
    case Family::logtrig_cos: {
        if (x.imag() == 0.0 && x.real() <= 0.0) throw domain("logarithm branch cut");
        const cplx lx = std::log(x);
        const cplx arg = s.a() * lx;
        const cplx trig = s.family == Family::logtrig_sin ? std::sin(arg) : std::cos(arg);
        return trig * std::exp(-(s.b() + 1.0) * lx);
    }
    }
    return 0.0;
}

inline InverseTransform inverse_transform(const SummandSpec& s) {
    InverseTransform it;
    const cplx I(0.0, 1.0);
    switch (s.family) {
    case Family::power: {
        const cplx zm1 = s.z() - 1.0;
        const cplx rg = rgamma(s.z());
        it.density = [zm1, rg](cplx t) { return rg * std::exp(zm1 * std::log(t)); };
        break;
    }
    case Family::shifted_power: {
        const cplx bm1 = s.beta() - 1.0;
        const cplx rg = rgamma(s.beta());
        const cplx a = s.a();
        it.density = [bm1, rg, a](cplx t) { return rg * std::exp(bm1 * std::log(t) - a * t); };
        it.decay_rate = a.real();
        break;
    }
    case Family::logtrig_sin:
    case Family::logtrig_cos: {
        const cplx e1 = s.b() - I * s.a();
        const cplx e2 = s.b() + I * s.a();
        const cplx r1 = rgamma(e1 + 1.0);
        const cplx r2 = rgamma(e2 + 1.0);
        if (s.family == Family::logtrig_sin) {
            it.density = [=](cplx t) {
                const cplx lt = std::log(t);
                return (r1 * std::exp(e1 * lt) - r2 * std::exp(e2 * lt)) / (2.0 * I);
            };
        } else {
            it.density = [=](cplx t) {
                const cplx lt = std::log(t);
                return 0.5 * (r1 * std::exp(e1 * lt) + r2 * std::exp(e2 * lt));
            };
        }
        break;
    }
    case Family::exponential: it.point_masses = {{s.c(), 1.0}}; break;
    case Family::cosine: it.point_masses = {{I, 0.5}, {-I, 0.5}}; break;
    case Family::sine: it.point_masses = {{-I, 1.0 / (2.0 * I)}, {I, -1.0 / (2.0 * I)}}; break;
    }
    if (it.has_density()) it.order = density_order(s);
    return it;
}

inline cplx density_eval(const InverseTransform& it, cplx t) {
    if (!it.has_density()) throw Error(ErrorCode::structural, "inverse transform has no density");
    if (t == 0.0) {
        if (it.order > 0.0) return 0.0;
        throw Error(ErrorCode::domain, "density evaluated at t=0 with non-positive small-t order");
    }
    return it.density(t);
}

} // namespace lapsum
