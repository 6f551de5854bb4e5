// Error types thrown by the dwsv library. All derive from dwsv::Error so
// callers can catch the whole family at once; the CLI maps parameter errors
// to exit code 2 and numeric errors to exit code 3.
#pragma once

#include <stdexcept>
#include <string>

namespace dwsv {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or out-of-domain input parameters.
struct ParameterDomainError : Error {
    using Error::Error;
};

// Weight a or b vanishes (boundary of the spectral domain).
struct DegenerateWeightError : ParameterDomainError {
    using ParameterDomainError::ParameterDomainError;
};

// Delta >= 1: the ferroelectric regime is not covered by the curve formulas.
struct FerroelectricError : ParameterDomainError {
    using ParameterDomainError::ParameterDomainError;
};

// Delta == -1 exactly: both weight parametrizations degenerate there.
struct RegimeBoundaryError : ParameterDomainError {
    using ParameterDomainError::ParameterDomainError;
};

// Evaluation at (or numerically indistinguishable from) a pole.
struct PoleError : Error {
    PoleError(const std::string& msg, double where) : Error(msg), location(where) {}
    double location;
};

// Argument left the branch on which a multivalued map is defined.
struct BranchError : Error {
    using Error::Error;
};

// Lattice size exceeds the exact-enumeration cap.
struct CapacityError : Error {
    using Error::Error;
};

// Adaptive precision escalation hit its cap without convergence.
struct PrecisionError : Error {
    using Error::Error;
};

// The 2x2 linear system for a curve point is singular at this parameter.
struct DegeneratePointError : Error {
    using Error::Error;
};

} // namespace dwsv
