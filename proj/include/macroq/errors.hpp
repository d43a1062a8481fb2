#pragma once

#include <stdexcept>
#include <string>

namespace macroq {

/// A precondition on a physical input was violated.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")")
        , error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

namespace detail {

inline void require(bool condition, const char* message) {
    if (!condition) {
        throw InputError(message);
    }
}

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InputError(message);
    }
}

} // namespace detail
} // namespace macroq
