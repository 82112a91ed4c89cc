#pragma once

// Complex gamma function: Lanczos (g = 7, n = 9) on Re z >= 1/2, reflection
// elsewhere. Relative accuracy is ~1e-15 on the strips used by the catalog.

#include <array>
#include <cmath>
#include <complex>

#include "lapsum/types.hpp"

namespace lapsum {

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_coef{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// log Gamma(z) for Re z >= 1/2. The imaginary part is not branch-continuous.
inline cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
        x += lanczos_coef[i] / (z + static_cast<double>(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

} // namespace detail

/// Gamma(z). Poles at non-positive integers return an infinite real value.
inline cplx gamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) return {HUGE_VAL, 0.0};
    if (z.real() < 0.5)
        return pi / (std::sin(pi * z) * std::exp(detail::lanczos_log_gamma(1.0 - z)));
    return std::exp(detail::lanczos_log_gamma(z));
}

/// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
inline cplx rgamma(cplx z) {
    if (detail::is_nonpositive_integer(z)) return 0.0;
    if (z.real() < 0.5)
        return std::sin(pi * z) * std::exp(detail::lanczos_log_gamma(1.0 - z)) / pi;
    return std::exp(-detail::lanczos_log_gamma(z));
}

} // namespace lapsum
