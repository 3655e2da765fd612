#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fnls {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-finite samples, zero denominators, bad arguments.
struct InvalidInput : Error {
    using Error::Error;
};

// Parameters outside the admissible (d, alpha, branch) domain.
struct ModelError : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct DiscretizationError : Error {
    using Error::Error;
};

struct NumericalOverflow : Error {
    using Error::Error;
};

struct InconsistencyError : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    NonConvergence(const std::string& what, double residual, int iterations)
        : Error(what), last_residual(residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

struct ConfigError : Error {
    explicit ConfigError(std::vector<std::string> msgs);
    std::vector<std::string> messages;
};

struct CheckpointError : Error {
    enum class Kind { Io, Magic, Truncated, Dimension };
    CheckpointError(Kind k, const std::string& what) : Error(what), kind(k) {}
    Kind kind;
};

}  // namespace fnls
