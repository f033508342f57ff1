#pragma once

#include <stdexcept>
#include <string>

namespace igsrelay {

/// Argument outside the mathematical domain of a function or model invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, series, solver) failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two partial-fraction poles coincide, or a closed form hits a removable singularity.
class DegenerateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Malformed scenario file or command-line override.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace igsrelay
