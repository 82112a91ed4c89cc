#pragma once

// Shared vocabulary: complex scalar, summand families and kernel tags.

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>

namespace lapsum {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

enum class Family {
    power,
    shifted_power,
    exponential,
    cosine,
    sine,
    logtrig_sin,
    logtrig_cos,
};

inline constexpr std::array<Family, 7> all_families{
    Family::power,  Family::shifted_power, Family::exponential, Family::cosine,
    Family::sine,   Family::logtrig_sin,   Family::logtrig_cos,
};

/// Kernel forms K(t; alpha, beta, gamma). Declaration order is the catalog order.
enum class KernelTag {
    base,
    alternating,
    shifted,
    shifted_alternating,
    power_factor,
    power_factor_alternating,
    exp_factor,
    exp_factor_alternating,
    differentiated,
    differentiated_alternating,
    integrated,
    integrated_alternating,
    added_constant,
    added_constant_alternating,
    hyp_inv_sine,
    hyp_inv_cosine,
    hyp_inv_sine_complex,
    hyp_inv_cosine_complex,
    hyp_sine,
    hyp_cosine,
    square_root,
    square_root_alternating,
    exponential,
    neg_exponential,
};

inline constexpr std::size_t kernel_count = 24;

inline constexpr std::array<KernelTag, kernel_count> all_kernels{
    KernelTag::base,
    KernelTag::alternating,
    KernelTag::shifted,
    KernelTag::shifted_alternating,
    KernelTag::power_factor,
    KernelTag::power_factor_alternating,
    KernelTag::exp_factor,
    KernelTag::exp_factor_alternating,
    KernelTag::differentiated,
    KernelTag::differentiated_alternating,
    KernelTag::integrated,
    KernelTag::integrated_alternating,
    KernelTag::added_constant,
    KernelTag::added_constant_alternating,
    KernelTag::hyp_inv_sine,
    KernelTag::hyp_inv_cosine,
    KernelTag::hyp_inv_sine_complex,
    KernelTag::hyp_inv_cosine_complex,
    KernelTag::hyp_sine,
    KernelTag::hyp_cosine,
    KernelTag::square_root,
    KernelTag::square_root_alternating,
    KernelTag::exponential,
    KernelTag::neg_exponential,
};

inline constexpr std::string_view family_name(Family f) {
    switch (f) {
    case Family::power: return "power";
    case Family::shifted_power: return "shifted_power";
    case Family::exponential: return "exp";
    case Family::cosine: return "cos";
    case Family::sine: return "sin";
    case Family::logtrig_sin: return "logtrig_sin";
    case Family::logtrig_cos: return "logtrig_cos";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : all_families)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

inline constexpr std::string_view kernel_name(KernelTag k) {
    switch (k) {
    case KernelTag::base: return "base";
    case KernelTag::alternating: return "alternating";
    case KernelTag::shifted: return "shifted";
    case KernelTag::shifted_alternating: return "shifted_alternating";
    case KernelTag::power_factor: return "power_factor";
    case KernelTag::power_factor_alternating: return "power_factor_alternating";
    case KernelTag::exp_factor: return "exp_factor";
    case KernelTag::exp_factor_alternating: return "exp_factor_alternating";
    case KernelTag::differentiated: return "differentiated";
    case KernelTag::differentiated_alternating: return "differentiated_alternating";
    case KernelTag::integrated: return "integrated";
    case KernelTag::integrated_alternating: return "integrated_alternating";
    case KernelTag::added_constant: return "added_constant";
    case KernelTag::added_constant_alternating: return "added_constant_alternating";
    case KernelTag::hyp_inv_sine: return "hyp_inv_sine";
    case KernelTag::hyp_inv_cosine: return "hyp_inv_cosine";
    case KernelTag::hyp_inv_sine_complex: return "hyp_inv_sine_complex";
    case KernelTag::hyp_inv_cosine_complex: return "hyp_inv_cosine_complex";
    case KernelTag::hyp_sine: return "hyp_sine";
    case KernelTag::hyp_cosine: return "hyp_cosine";
    case KernelTag::square_root: return "square_root";
    case KernelTag::square_root_alternating: return "square_root_alternating";
    case KernelTag::exponential: return "exponential";
    case KernelTag::neg_exponential: return "neg_exponential";
    }
    return "?";
}

inline std::optional<KernelTag> kernel_from_name(std::string_view name) {
    for (KernelTag k : all_kernels)
        if (kernel_name(k) == name) return k;
    return std::nullopt;
}

inline constexpr std::size_t kernel_index(KernelTag k) { return static_cast<std::size_t>(k); }

/// Parameter-independent facts about a kernel and the series it generates.
/// The series side is s * sum_k w(k) g(slope*k + offset) + c0 * g(0), with
/// |w(k)| ~ k^weight_power * ratio^k (or 1/factorial when `factorial`).
struct KernelTraits {
    double small_t_order;   // K(t) ~ c t^q as t -> 0+
    bool small_t_log;       // ... times ln t
    bool alternating;       // w(k) carries a (-1)^k sign pattern
    double weight_power;
    bool factorial;
    bool geometric;         // ratio^k with ratio < 1 enforced by the variant's own range
    bool constant_term;     // c0 == 1
    int equality_sign;
};

inline constexpr KernelTraits kernel_traits(KernelTag k) {
    switch (k) {
    case KernelTag::base: return {-1, false, false, 0, false, false, false, +1};
    case KernelTag::alternating: return {0, false, true, 0, false, false, false, +1};
    case KernelTag::shifted: return {-1, false, false, 0, false, false, false, +1};
    case KernelTag::shifted_alternating: return {0, false, true, 0, false, false, false, +1};
    case KernelTag::power_factor: return {0, false, false, 0, false, true, false, +1};
    case KernelTag::power_factor_alternating: return {0, false, true, 0, false, true, false, +1};
    case KernelTag::exp_factor: return {0, false, false, 0, false, true, false, +1};
    case KernelTag::exp_factor_alternating: return {0, false, true, 0, false, true, false, +1};
    case KernelTag::differentiated: return {-2, false, false, 1, false, false, false, +1};
    case KernelTag::differentiated_alternating: return {0, false, true, 1, false, false, false, +1};
    case KernelTag::integrated: return {0, true, false, -1, false, false, false, -1};
    case KernelTag::integrated_alternating: return {0, false, true, -1, false, false, false, +1};
    case KernelTag::added_constant: return {-1, false, false, 0, false, false, false, +1};
    case KernelTag::added_constant_alternating: return {0, false, true, 0, false, false, false, +1};
    case KernelTag::hyp_inv_sine: return {-1, false, false, 0, false, false, false, +1};
    case KernelTag::hyp_inv_cosine: return {0, false, true, 0, false, false, false, +1};
    case KernelTag::hyp_inv_sine_complex: return {-1, false, false, 0, false, false, false, +1};
    case KernelTag::hyp_inv_cosine_complex: return {0, false, true, 0, false, false, false, +1};
    case KernelTag::hyp_sine: return {0, false, false, 0, true, false, false, +1};
    case KernelTag::hyp_cosine: return {0, false, false, 0, true, false, true, +1};
    case KernelTag::square_root: return {-0.5, false, false, -0.5, false, false, true, +1};
    case KernelTag::square_root_alternating: return {0, false, true, -0.5, false, false, true, +1};
    case KernelTag::exponential: return {0, false, false, 0, true, false, true, +1};
    case KernelTag::neg_exponential: return {0, false, true, 0, true, false, true, +1};
    }
    return {};
}

enum class SeriesClass { absolute, conditional, abel, divergent };

inline constexpr std::string_view series_class_name(SeriesClass c) {
    switch (c) {
    case SeriesClass::absolute: return "absolute";
    case SeriesClass::conditional: return "conditional";
    case SeriesClass::abel: return "abel";
    case SeriesClass::divergent: return "divergent";
    }
    return "?";
}

/// Leading-order size of the k-th term: k^power * ratio^k (/ k! if factorial).
struct SeriesGrowth {
    double power = 0.0;
    double ratio = 1.0;
    bool factorial = false;
    bool alternating = false;  // explicit (-1)^k in the weights
    bool oscillating = false;  // bounded oscillation from the summand itself
};

inline SeriesClass classify_growth(const SeriesGrowth& g) {
    constexpr double tol = 1e-12;
    if (g.factorial) return SeriesClass::absolute;
    if (g.ratio < 1.0 - tol) return SeriesClass::absolute;
    if (g.ratio > 1.0 + tol) return SeriesClass::divergent;
    const bool sign_changes = g.alternating || g.oscillating;
    if (g.power < -1.0 - tol) return SeriesClass::absolute;
    if (g.power < -tol && sign_changes) return SeriesClass::conditional;
    if (g.power <= tol && sign_changes) return SeriesClass::abel;
    return SeriesClass::divergent;
}

} // namespace lapsum
