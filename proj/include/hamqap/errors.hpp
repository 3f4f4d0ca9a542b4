#pragma once

#include <stdexcept>
#include <string>

namespace hamqap {

/// Anything wrong with user-supplied data: files, flags, parameter ranges.
/// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A symmetric matrix that is not a member of the requested coherent algebra.
struct NotInAlgebraError : InputError {
    double residual;
    NotInAlgebraError(const std::string& msg, double res)
        : InputError(msg), residual(res) {}
};

/// Numerical breakdown inside the solver (NaN/Inf in an iterate or report).
/// The CLI maps this to exit code 1.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hamqap
