#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lapsum/types.hpp"

namespace lapsum {

enum class ErrorCode {
    domain,
    validation,
    pole,
    structural,
    accuracy,
    integrand,
    divergence,
    tail,
    shape,
    unsupported,
    convergence,
    unsuitable_transform,
    syntax,
};

inline constexpr std::string_view error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::validation: return "validation";
    case ErrorCode::pole: return "pole";
    case ErrorCode::structural: return "structural";
    case ErrorCode::accuracy: return "accuracy";
    case ErrorCode::integrand: return "integrand";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::tail: return "tail";
    case ErrorCode::shape: return "shape";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::unsuitable_transform: return "unsuitable_transform";
    case ErrorCode::syntax: return "syntax";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class PoleError : public Error {
public:
    PoleError(cplx location, const std::string& what)
        : Error(ErrorCode::pole, what), location_(location) {}
    cplx location() const noexcept { return location_; }

private:
    cplx location_;
};

/// Raised when an adaptive rule runs out of levels; keeps the best estimate.
class AccuracyError : public Error {
public:
    AccuracyError(cplx best, double err_est, const std::string& what)
        : Error(ErrorCode::accuracy, what), best_(best), err_est_(err_est) {}
    cplx best_estimate() const noexcept { return best_; }
    double err_est() const noexcept { return err_est_; }

private:
    cplx best_;
    double err_est_;
};

class IntegrandError : public Error {
public:
    IntegrandError(double node, const std::string& what)
        : Error(ErrorCode::integrand, what), node_(node) {}
    double node() const noexcept { return node_; }

private:
    double node_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error(ErrorCode::syntax, what), offset_(offset), expected_(std::move(expected)) {}
    /// 1-based byte position of the offending input.
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

} // namespace lapsum
