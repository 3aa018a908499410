#pragma once

#include <stdexcept>
#include <string>

namespace hcm {

// Invalid physical input or configuration value.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine failed to converge (quadrature, root finding).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An optimization problem has an empty feasible set.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The integrator detected unbounded energy growth.
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed config file or input data file; message carries the field
// path or line number.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hcm
