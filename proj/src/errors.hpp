#pragma once

#include <stdexcept>
#include <string>

namespace lmgp {

// Parameter or argument outside the mathematically admissible range.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical procedure failed (factorization breakdown, sweep exhaustion, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature did not reach the requested tolerance; carries the best estimate.
class ToleranceError : public NumericalError {
public:
    ToleranceError(const std::string& msg, double value, double error_estimate)
        : NumericalError(msg), value(value), error_estimate(error_estimate) {}
    double value;
    double error_estimate;
};

} // namespace lmgp
