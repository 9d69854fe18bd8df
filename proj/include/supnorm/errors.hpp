#pragma once

#include <stdexcept>
#include <string>

namespace supnorm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or inconsistent fundamental-domain document.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Geometric or bookkeeping data required by an operation is absent.
class MissingDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Weight or group outside what the operation supports.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure did not reach its accuracy target.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

/// Two independent evaluations of the same quantity disagree.
class ConsistencyError : public std::runtime_error {
public:
    ConsistencyError(const std::string& what, double first, double second)
        : std::runtime_error(what), first_(first), second_(second) {}

    double first() const noexcept { return first_; }
    double second() const noexcept { return second_; }

private:
    double first_;
    double second_;
};

/// Failure inside the bound pipeline, tagged with the pipeline step.
class AlgorithmError : public std::runtime_error {
public:
    AlgorithmError(int step, const std::string& what)
        : std::runtime_error("step (" + std::to_string(step) + "): " + what), step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

}  // namespace supnorm
