#pragma once

#include <stdexcept>
#include <string>

namespace seasvol {

// Raised when a config file or a constructor argument violates an invariant.
// The message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a numerical routine cannot reach its requested accuracy
// (quadrature non-convergence, ODE step-size underflow, root not bracketed).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg, double achieved = 0.0, double where = 0.0)
        : std::runtime_error(msg), achieved_tolerance(achieved), location(where) {}

    double achieved_tolerance;  // best tolerance reached before giving up
    double location;            // abscissa / time at failure, when meaningful
};

}  // namespace seasvol
