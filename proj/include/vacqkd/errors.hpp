#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vacqkd {

// Adaptive integration exhausted its evaluation budget before reaching the
// requested tolerance. Carries the best estimate and its error bound.
class QuadratureBudgetError : public std::runtime_error {
public:
    QuadratureBudgetError(double estimate, double error_bound, std::size_t evals)
        : std::runtime_error("quadrature budget exceeded: estimate " +
                             std::to_string(estimate) + " +/- " + std::to_string(error_bound) +
                             " after " + std::to_string(evals) + " evaluations"),
          estimate_(estimate), error_bound_(error_bound), evals_(evals) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }
    std::size_t evals() const noexcept { return evals_; }

private:
    double estimate_;
    double error_bound_;
    std::size_t evals_;
};

// A Future/Past detector pair violates the phase anti-symmetry conditions.
class PairingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An assembled covariance matrix has a symplectic eigenvalue below 1.
class UnphysicalCovarianceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Channel estimation was asked to run on too few revealed pairs.
class InsufficientDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace vacqkd
