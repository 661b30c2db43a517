#pragma once

#include <stdexcept>
#include <string>

namespace d2dmotif {

// Every library failure derives from Error so callers can catch one type and
// still dispatch on the concrete class (the CLI maps each class to an exit code).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

// An infinite series did not reach its tolerance within the term budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_term, int terms)
        : Error(what), last_term_(last_term), terms_(terms) {}

    double last_term() const noexcept { return last_term_; }
    int terms() const noexcept { return terms_; }

private:
    double last_term_;
    int terms_;
};

// Quadrature failed to converge, or a rate integral is not integrable.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double estimate, double error_estimate)
        : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

// Fewer than three devices per cluster: no three-node motif can exist.
class NoMotifError : public Error {
public:
    using Error::Error;
};

// Baseline random-graph formulas evaluated outside their validity range
// (link probability above one, negative variance radicand).
class InvalidRegimeError : public Error {
public:
    using Error::Error;
};

// Z-score requested while the baseline standard deviation is zero.
class UndefinedZError : public Error {
public:
    using Error::Error;
};

}  // namespace d2dmotif
