// errors.hpp — Exception types shared across the toolkit

#pragma once

#include <stdexcept>
#include <string>

namespace probeqfi {

// Adaptive quadrature ran out of panel budget. Carries the best estimate so
// callers can decide whether the bound is still usable.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}

    double best_estimate;
    double error_bound;
};

// An integrand (or other numeric kernel) produced NaN.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A closed-form route was requested outside its domain of validity.
class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Measurement statistics carry no information at this configuration
// (denominator of the Fisher ratio vanishes).
class DegenerateMeasurement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Objective is identically zero / both sensitivities vanish: no setting is
// better than any other.
class NoInformation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace probeqfi
