#ifndef PDM_ERRORS_HPP
#define PDM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed expression text; carries the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what_failed)
        : Error("parse error at offset " + std::to_string(offset) + ": " + what_failed),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Runtime evaluation failure (ln of non-positive argument, division by zero, ...).
class EvalError : public Error {
public:
    using Error::Error;
};

/// Evaluation outside a profile's open domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Mass profile evaluated to a non-positive value where positivity is required.
class NonPositiveMassError : public Error {
public:
    using Error::Error;
};

/// Problem-level failure in an eigenvalue solver or transformation.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Requested coefficient pair admits no real ordering parameters.
class NoRealOrderingError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Negative radicand in the effective angular momentum formula.
class ComplexLambdaError : public SolverError {
public:
    using SolverError::SolverError;
};

/// Bad or missing entries in a problem configuration file.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace pdm

#endif
