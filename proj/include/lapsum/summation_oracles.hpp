#pragma once

// Independent series evaluation: direct summation with tail corrections,
// Euler-transformed alternating sums, Abel-damped sums for oscillating
// summands, negative-order polylogarithms and the dual (type B) series.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lapsum/error.hpp"
#include "lapsum/kernel_library.hpp"
#include "lapsum/quadrature.hpp"
#include "lapsum/transform_catalog.hpp"
#include "lapsum/types.hpp"

namespace lapsum {

struct TailMethod {
    enum class Kind { none, integral_bound, euler_maclaurin };
    Kind kind = Kind::none;
    int order = 0;  // Euler-Maclaurin: number of Bernoulli corrections n, using B_2 .. B_2n

    static TailMethod none() { return {}; }
    static TailMethod integral_bound() { return {Kind::integral_bound, 0}; }
    static TailMethod euler_maclaurin(int order) {
        if (order < 1 || order > 6)
            throw Error(ErrorCode::validation, "Euler-Maclaurin order must lie in [1, 6]");
        return {Kind::euler_maclaurin, order};
    }
};

struct OracleResult {
    cplx value;
    double err_est = 0.0;
    int terms_used = 0;
    cplx tail_value = 0.0;
    TailMethod::Kind tail_kind = TailMethod::Kind::none;
};

/// Tail correction could not be applied; carries the plain partial sum.
class TailError : public Error {
public:
    TailError(OracleResult partial, const std::string& what)
        : Error(ErrorCode::tail, what), partial_(partial) {}
    const OracleResult& partial() const noexcept { return partial_; }

private:
    OracleResult partial_;
};

inline bool finite_c_value(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

inline SeriesGrowth series_growth(const SummandSpec& spec, const SeriesShape& shape) {
    SeriesGrowth g = family_growth(spec, shape.slope);
    g.power += shape.weight_power;
    g.ratio *= shape.weight_ratio;
    g.factorial = g.factorial || shape.factorial;
    g.alternating = shape.alternating;
    return g;
}

inline SeriesClass classify_series(const SummandSpec& spec, const SeriesShape& shape) {
    return classify_growth(series_growth(spec, shape));
}

namespace detail {

inline constexpr std::array<double, 7> bernoulli_even{
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};  // B_2 .. B_14

using Term = std::function<cplx(double)>;

inline Term series_term(const SummandSpec& spec, const SeriesShape& shape) {
    return [&spec, &shape](double k) { return shape.term_weight(k) * summand_eval(spec, shape.argument(k)); };
}

inline cplx constant_part(const SummandSpec& spec, const SeriesShape& shape) {
    if (!shape.constant_coefficient) return 0.0;
    auto g0 = summand_at_zero(spec);
    if (!g0) throw Error(ErrorCode::domain, "constant term needs a finite g(0)");
    return static_cast<double>(shape.constant_coefficient) * *g0;
}

// Dyadic Cauchy test on partial sums from `start`.
inline void divergence_probe(const Term& term, int start, int N) {
    const int n0 = std::clamp(N, 8, 1024);
    cplx s = 0.0;
    int k = start;
    auto advance = [&](int count) {
        for (int i = 0; i < count; ++i) s += term(k++);
        return s;
    };
    const cplx s1 = advance(n0);
    const cplx s2 = advance(n0);
    const cplx s4 = advance(2 * n0);
    const cplx s8 = advance(4 * n0);
    const double d1 = std::abs(s2 - s1), d2 = std::abs(s4 - s2), d3 = std::abs(s8 - s4);
    if (!std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(d3))
        throw Error(ErrorCode::divergence, "series terms are not finite");
    if (d1 <= d2 && d2 <= d3 && d3 > 1e-12 * (1.0 + std::abs(s8)))
        throw Error(ErrorCode::divergence, "partial sums fail the dyadic Cauchy test");
}

inline double binomial(int n, int k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Central difference of order m with step h (error O(h^2)).
inline cplx central_difference(const Term& f, double x, int m, double h) {
    cplx acc = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double c = binomial(m, j) * ((j % 2) ? -1.0 : 1.0);
        acc += c * f(x + (0.5 * m - j) * h);
    }
    return acc / std::pow(h, m);
}

inline cplx derivative(const Term& f, double x, int m, double h) {
    const cplx coarse = central_difference(f, x, m, h);
    const cplx fine = central_difference(f, x, m, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

// Smoothness/monotonicity screen before trusting a tail formula past N.
inline bool tail_applicable(const Term& f, double N) {
    constexpr int samples = 25;
    int re_changes = 0, im_changes = 0;
    cplx prev = f(N);
    if (!finite_c_value(prev)) return false;
    for (int i = 1; i < samples; ++i) {
        const cplx v = f(N + 3.0 * N * i / (samples - 1));
        if (!finite_c_value(v)) return false;
        if ((v.real() > 0) != (prev.real() > 0) && v.real() != 0.0 && prev.real() != 0.0) ++re_changes;
        if ((v.imag() > 0) != (prev.imag() > 0) && v.imag() != 0.0 && prev.imag() != 0.0) ++im_changes;
        prev = v;
    }
    if (re_changes >= 2 || im_changes >= 2) return false;
    return std::abs(f(4.0 * N)) < std::abs(f(N)) || f(N) == 0.0;
}

// integral_N^inf f(x) dx through x = N/u on (0, 1].
inline QuadResult tail_integral(const Term& f, double N, double power, const QuadConfig& cfg) {
    auto integrand = [&](double u) -> cplx {
        const double x = N / u;
        const cplx v = f(x);
        if (v == 0.0) return 0.0;
        return v * (N / (u * u));
    };
    EndpointSingularity sing{std::max(-power - 2.0, -0.999), false};
    return integrate_head(integrand, sing, cfg, 1.0);
}

inline double rounding(double magnitude, int terms) {
    return 4.0 * std::numeric_limits<double>::epsilon() * magnitude * std::sqrt(static_cast<double>(terms) + 1.0);
}

// Neville extrapolation of samples y(x_i) to x = 0; returns value and last correction.
inline std::pair<cplx, double> extrapolate_to_zero(const std::vector<double>& x, std::vector<cplx> y) {
    const std::size_t n = y.size();
    std::vector<cplx> diag;
    diag.push_back(y[0]);
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i)
            y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
        diag.push_back(y[0]);
    }
    const double err = n >= 2 ? std::abs(diag[n - 1] - diag[n - 2]) : std::abs(diag[0]);
    return {diag[n - 1], err};
}

inline std::vector<cplx> euler_transform_increments(std::vector<cplx> u) {
    // sum_j (-1)^j u_j = sum_n (-1)^n Delta^n u_0 / 2^{n+1}
    std::vector<cplx> inc;
    double scale = 0.5;
    double sign = 1.0;
    while (!u.empty()) {
        inc.push_back(sign * scale * u[0]);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] = u[i + 1] - u[i];
        u.pop_back();
        scale *= 0.5;
        sign = -sign;
    }
    return inc;
}


inline OracleResult euler_alternating_sum(const Term& term, int start, int N) {
    const int D = std::min(N / 2, 30);
    const int direct = N - D;
    cplx head = 0.0;
    double mag = 0.0;
    int k = start;
    for (int i = 0; i < direct; ++i, ++k) {
        const cplx t = term(k);
        head += t;
        mag = std::max(mag, std::abs(t));
    }
    std::vector<cplx> u(D);
    for (int j = 0; j < D; ++j) u[j] = ((j % 2) ? -1.0 : 1.0) * term(k + j);
    const auto inc = euler_transform_increments(u);
    cplx tail = 0.0;
    for (const cplx& c : inc) tail += c;
    OracleResult r;
    r.value = head + tail;
    r.tail_value = tail;
    r.terms_used = N;
    r.err_est = (inc.empty() ? 0.0 : std::abs(inc.back())) + rounding(mag, N);
    return r;
}

inline OracleResult direct_with_tail(const Term& term, int start, int N, TailMethod tail, double power,
                                     const QuadConfig& cfg) {
    cplx sum = 0.0;
    double mag = 0.0;
    for (int k = start; k <= N; ++k) {
        const cplx t = term(k);
        sum += t;
        mag = std::max(mag, std::abs(t));
    }
    OracleResult r;
    r.value = sum;
    r.terms_used = N - start + 1;
    r.tail_kind = TailMethod::Kind::none;
    const double fl = rounding(std::max(mag, std::abs(sum)), r.terms_used);

    // crude bound from the next terms when no tail model is used
    const cplx next = term(N + 1.0);
    const double ratio = std::abs(term(N + 2.0)) / std::max(std::abs(next), 1e-300);
    const double plain_err = ratio < 0.9 ? std::abs(next) / (1.0 - ratio) : std::abs(next) * N;
    r.err_est = plain_err + fl;
    if (tail.kind == TailMethod::Kind::none) return r;

    const double Nd = static_cast<double>(N);
    if (!tail_applicable(term, Nd)) throw TailError(r, "tail correction needs a smooth, monotone summand past N");

    if (tail.kind == TailMethod::Kind::integral_bound) {
        const QuadResult upper = tail_integral(term, Nd, power, cfg);
        const QuadResult lower = tail_integral(term, Nd + 1.0, power, cfg);
        r.tail_value = 0.5 * (upper.value + lower.value);
        r.err_est = 0.5 * std::abs(upper.value - lower.value) + upper.err_est + lower.err_est + fl;
    } else {
        const QuadResult I = tail_integral(term, Nd, power, cfg);
        const double h = 1e-2 * Nd;
        cplx corr = -0.5 * term(Nd);
        double fact = 1.0;  // (2j)!
        for (int j = 1; j <= tail.order; ++j) {
            fact *= (2.0 * j - 1.0) * (2.0 * j);
            corr -= bernoulli_even[j - 1] / fact * derivative(term, Nd, 2 * j - 1, h);
        }
        const int jn = tail.order + 1;
        const double fact_next = fact * (2.0 * jn - 1.0) * (2.0 * jn);
        const double omitted = std::abs(bernoulli_even[jn - 1] / fact_next * derivative(term, Nd, 2 * jn - 1, h));
        r.tail_value = I.value + corr;
        r.err_est = omitted + I.err_est + fl;
    }
    r.value = sum + r.tail_value;
    r.tail_kind = tail.kind;
    return r;
}

} // namespace detail

/// Integral-side value s * sum_{k=start}^N w(k) g(arg k) + c0 g(0), plus an optional tail.
inline OracleResult sum_direct(const SummandSpec& spec, const SeriesShape& shape, int N,
                               TailMethod tail = TailMethod::none(), const QuadConfig& cfg = {}) {
    if (N < 8) throw Error(ErrorCode::validation, "sum_direct requires N >= 8");
    const auto term = detail::series_term(spec, shape);
    detail::divergence_probe(term, shape.index_start, N);
    const cplx c0 = detail::constant_part(spec, shape);
    const double power = series_growth(spec, shape).power;
    try {
        OracleResult r = detail::direct_with_tail(term, shape.index_start, N, tail, power, cfg);
        r.value += c0;
        return r;
    } catch (TailError& e) {
        OracleResult r = e.partial();
        r.value += c0;
        throw TailError(r, e.what());
    }
}

inline OracleResult sum_alternating(const SummandSpec& spec, const SeriesShape& shape, int N) {
    if (!shape.alternating) throw Error(ErrorCode::shape, "sum_alternating needs an alternating shape");
    if (N < 8) throw Error(ErrorCode::validation, "sum_alternating requires N >= 8");
    const auto term = detail::series_term(spec, shape);
    OracleResult r = detail::euler_alternating_sum(term, shape.index_start, N);
    r.value += detail::constant_part(spec, shape);
    return r;
}

/// Abel-damped sum lim_{eps -> 0} sum w(k) g(arg k) e^{-eps k}, extrapolated in eps.
/// Agrees with the ordinary sum whenever that converges.
inline OracleResult sum_abel(const SummandSpec& spec, const SeriesShape& shape, int levels = 8) {
    const auto term = detail::series_term(spec, shape);
    // keep the first damping well inside the nearest singularity of the damped sum
    double dist = 1.0;
    if (spec.family == Family::cosine || spec.family == Family::sine) {
        const double w = std::abs(shape.slope);
        const double n = std::round(w / (2.0 * pi));
        dist = std::abs(w - 2.0 * pi * n);
        if (shape.alternating) dist = std::min(dist, std::abs(w - pi - 2.0 * pi * std::round((w - pi) / (2.0 * pi))));
    }
    const double eps0 = std::min(0.05, 0.25 * dist);
    if (!(eps0 > 1e-6)) throw Error(ErrorCode::divergence, "Abel sum: damping cannot resolve the series");
    std::vector<double> eps;
    std::vector<cplx> vals;
    int terms = 0;
    for (int j = 0; j < levels; ++j) {
        const double e = eps0 / std::ldexp(1.0, j);
        const int K = static_cast<int>(std::ceil(42.0 / e));
        cplx s = 0.0;
        for (int k = shape.index_start; k <= K; ++k) s += term(k) * std::exp(-e * k);
        eps.push_back(e);
        vals.push_back(s);
        terms = std::max(terms, K);
    }
    auto [v, err] = detail::extrapolate_to_zero(eps, vals);
    OracleResult r;
    r.value = v + detail::constant_part(spec, shape);
    r.err_est = err + detail::rounding(std::abs(v), terms);
    r.terms_used = terms;
    return r;
}

/// sum_{k>=1} k^m e^{-k t}
inline double negapolylog(int m, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::domain, "negapolylog requires t > 0");
    if (m < 0 || m > 8) throw Error(ErrorCode::unsupported, "negapolylog supports 0 <= m <= 8");
    const double x = std::exp(-t);
    const double omx = -std::expm1(-t);
    if (m == 0) return x / omx;
    // Eulerian numbers A(m, j)
    std::vector<std::vector<double>> A(m + 1, std::vector<double>(m + 1, 0.0));
    A[0][0] = 1.0;
    for (int n = 1; n <= m; ++n)
        for (int j = 0; j < n; ++j)
            A[n][j] = (j + 1) * A[n - 1][j] + (j >= 1 ? (n - j) * A[n - 1][j - 1] : 0.0);
    double num = 0.0;
    for (int j = 0; j < m; ++j) num += A[m][j] * std::pow(x, m - j);
    return num / std::pow(omx, m + 1);
}

/// sum_{k>=1} P(k) f(k) with P(k) = sum_j coeffs[j] k^j and f given by its density.
inline OracleResult weighted_partial_summation(const SummandSpec& fspec, const std::vector<double>& coeffs,
                                               const QuadConfig& cfg = {}) {
    const InverseTransform it = inverse_transform(fspec);
    if (!it.has_density()) throw Error(ErrorCode::structural, "weighted summation needs a density");
    int deg = -1;
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j)
        if (coeffs[j] != 0.0) deg = j;
    if (deg < 0) return OracleResult{0.0, 0.0, 1, 0.0};
    if (deg > 8) throw Error(ErrorCode::unsupported, "polynomial degree above 8");
    const double p = it.order;
    if (!(p - deg > 0.0))
        throw Error(ErrorCode::convergence, "composed singularity order too low: p - deg <= 0");
    auto f = [&](double t) -> cplx {
        const cplx F = it.density(t);
        if (F == 0.0) return 0.0;
        double inner = 0.0;
        for (int j = 0; j <= deg; ++j)
            if (coeffs[j] != 0.0) inner += coeffs[j] * negapolylog(j, t);
        return F * inner;
    };
    const QuadResult q = integrate_semiinf(f, {p - deg - 1.0, false}, cfg);
    return OracleResult{q.value, q.err_est, q.levels + 1, 0.0};
}

struct TypeBOptions {
    bool probe = true;
    QuadConfig cfg{};
};

/// F(x) = prefactor(x) * sum_{k=1}^N weight(k, x) G(x / scale(k)) plus a tail.
inline OracleResult typeB_eval(const SummandSpec& spec, const TypeBShape& b, double x, int N = 64,
                               const TypeBOptions& opt = {}) {
    if (!b.numeric_evaluable) throw Error(ErrorCode::structural, "type-B shape is not numerically evaluable");
    const InverseTransform it = inverse_transform(spec);
    if (!it.has_density()) throw Error(ErrorCode::structural, "type-B series needs a density (point masses present)");
    if (N < 8) throw Error(ErrorCode::validation, "typeB_eval requires N >= 8");
    auto term = [&](double k) -> cplx {
        const cplx sc = b.scale(k);
        const cplx G = it.density(x / sc);
        if (G == 0.0) return 0.0;
        return b.weight(k, x) * G;
    };
    if (opt.probe) detail::divergence_probe(term, 1, N);
    OracleResult r;
    if (b.alternating) {
        r = detail::euler_alternating_sum(term, 1, N);
    } else {
        // size of the terms: G(x/k) ~ k^{-p}, weight ~ k^{-1} (times the shape's own power)
        const double power = -it.order - 1.0;
        try {
            r = detail::direct_with_tail(term, 1, N, TailMethod::euler_maclaurin(4), power, opt.cfg);
        } catch (TailError& e) {
            r = e.partial();
        }
    }
    const cplx pre = b.prefactor(x);
    r.value *= pre;
    r.tail_value *= pre;
    r.err_est *= std::abs(pre);
    return r;
}

} // namespace lapsum
