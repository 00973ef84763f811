#pragma once

#include <stdexcept>
#include <string>

namespace rentropy {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable name used in CLI payloads.
  virtual const char* kind() const noexcept { return "Error"; }
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

/// An iterative method failed to reach its fixed tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConvergenceError"; }
};

/// Every interquantile range of the law vanishes (single-point law).
class DegenerateLawError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DegenerateLaw"; }
};

/// The law has no finite variance.
class NoVarianceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NoVariance"; }
};

/// The law has the wrong shape for the operation (e.g. a mixture where a
/// discrete law is expected).
class StructureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "StructureError"; }
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "Unsupported"; }
};

/// An internal cross-check between two computation routes disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConsistencyError"; }
};

/// A law specification string could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string token)
      : Error(message + " (at '" + token + "')"), token_(std::move(token)) {}
  const char* kind() const noexcept override { return "ParseError"; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

}  // namespace rentropy
