#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtime {

/// A parameter record violates one of its inequalities.
class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidExponent : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An analytic expression was evaluated where it divides by zero.
class SingularPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OrderMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroConstantTerm : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OrderTooHigh : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// exp() argument of a bound formula lies outside the double range.
class BoundOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DivergentIntegral : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A virtual-control jet could not be represented near the singular surface
/// e = 0 of a stage.
class SingularRegion : public std::domain_error {
public:
    SingularRegion(const std::string& what, int stage = -1)
        : std::domain_error(what), stage_(stage) {}
    int stage() const noexcept { return stage_; }

private:
    int stage_;
};

/// Base for failures raised by the ODE integrator.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double t, std::vector<double> last_state)
        : std::runtime_error(what), t_(t), last_state_(std::move(last_state)) {}
    double time() const noexcept { return t_; }
    const std::vector<double>& last_state() const noexcept { return last_state_; }

private:
    double t_;
    std::vector<double> last_state_;
};

class StepUnderflow : public SolverError {
public:
    using SolverError::SolverError;
};

class NonFiniteValue : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace fixtime
