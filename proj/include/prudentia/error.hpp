#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace prudentia {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownLabel : public Error {
public:
    explicit UnknownLabel(const std::string& label)
        : Error("unknown label '" + label + "'"), label_(label) {}
    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class NotCar : public Error {
public:
    using Error::Error;
};

class NotStrict : public Error {
public:
    using Error::Error;
};

class ZeroNormal : public Error {
public:
    using Error::Error;
};

/// Raised when a dimension or hyperplane count exceeds the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class Underdetermined : public Error {
public:
    using Error::Error;
};

class NotConditionally2Diverse : public Error {
public:
    explicit NotConditionally2Diverse(const std::string& what, std::vector<std::string> witness = {})
        : Error(what), witness_(std::move(witness)) {}
    const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
    std::vector<std::string> witness_;
};

class JacobiViolated : public Error {
public:
    JacobiViolated(const std::string& what, std::vector<std::string> triple, std::vector<std::string> residual)
        : Error(what), triple_(std::move(triple)), residual_(std::move(residual)) {}
    const std::vector<std::string>& triple() const noexcept { return triple_; }
    /// Residual entries rendered as "p/q" strings.
    const std::vector<std::string>& residual() const noexcept { return residual_; }

private:
    std::vector<std::string> triple_;
    std::vector<std::string> residual_;
};

class Degenerate : public Error {
public:
    using Error::Error;
};

class NotTotal : public Error {
public:
    using Error::Error;
};

class EmptyDatabase : public Error {
public:
    using Error::Error;
};

class NotTwoDiverse : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace prudentia
