#pragma once

#include <stdexcept>
#include <string>

namespace pcw {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Invalid arguments or violated preconditions (CLI exit code 2).
class DomainError : public Error {
public:
    explicit DomainError(const std::string &what) : Error(what) {}
};

// The model has no answer for the requested inputs (CLI exit code 3).
// `quantity()` names the value that left its feasible range.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string quantity, const std::string &what)
        : Error(what), quantity_(std::move(quantity)) {}
    const std::string &quantity() const { return quantity_; }

private:
    std::string quantity_;
};

// A root bracket without a sign change.
class BracketError : public InfeasibleError {
public:
    explicit BracketError(const std::string &what) : InfeasibleError("bracket", what) {}
};

// An iteration that ran out of budget (CLI exit code 4).
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string &what) : Error(what) {}
};

// Quadrature that hit its subdivision limit; carries the best estimate so far.
class QuadratureError : public ConvergenceError {
public:
    QuadratureError(double best_estimate, const std::string &what)
        : ConvergenceError(what), best_estimate_(best_estimate) {}
    double best_estimate() const { return best_estimate_; }

private:
    double best_estimate_ = 0.0;
};

} // namespace pcw
