#pragma once

#include <stdexcept>
#include <string>

namespace arclab {

// Bad experiment configuration or invalid user input (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: solver exhaustion, non-finite data (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Requested time step exceeds the advective stability bound.
// Carries the largest admissible step so the caller can shrink.
struct CflError : std::runtime_error {
    double dt_limit;
    CflError(const std::string& what, double limit)
        : std::runtime_error(what), dt_limit(limit) {}
};

} // namespace arclab
