#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace otfs {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Input validation: malformed arguments, files or dictionaries.
// ---------------------------------------------------------------------------

class ValidationError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class DuplicatePointError : public ValidationError {
  public:
    explicit DuplicatePointError(std::size_t index)
        : ValidationError("duplicate observation point at snapshot index " + std::to_string(index)),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

class PreconditionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// JSON file is well formed but does not match the expected schema.
class SchemaError : public ValidationError {
  public:
    SchemaError(std::string path, const std::string& what)
        : ValidationError("schema error at '" + path + "': " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

class ParseError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class DegenerateSampleError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

// ---------------------------------------------------------------------------
// Numerical failures while fitting or evaluating.
// ---------------------------------------------------------------------------

class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Saddle matrix condition estimate exceeded the configured threshold.
class ConditioningError : public NumericalError {
  public:
    explicit ConditioningError(double estimate)
        : NumericalError("saddle system is ill-conditioned (1-norm condition estimate " +
                         std::to_string(estimate) + ")"),
          estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

  private:
    double estimate_;
};

/// Polynomial tail matrix P has linearly dependent columns.
class UnisolvencyError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class LoocvError : public NumericalError {
  public:
    LoocvError(std::size_t omitted, const std::string& cause)
        : NumericalError("leave-one-out fit omitting snapshot " + std::to_string(omitted) +
                         " failed: " + cause),
          omitted_(omitted) {}
    std::size_t omitted_index() const noexcept { return omitted_; }

  private:
    std::size_t omitted_;
};

class TuningError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Dynamics or linearization produced a non-finite value.
class EvaluationError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// ODE integration failures.
// ---------------------------------------------------------------------------

class IntegrationError : public Error {
  public:
    IntegrationError(double last_time, const std::string& what)
        : Error(what + " (last valid time " + std::to_string(last_time) + ")"),
          last_time_(last_time) {}
    double last_time() const noexcept { return last_time_; }

  private:
    double last_time_;
};

} // namespace otfs
