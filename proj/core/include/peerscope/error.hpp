#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace peerscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not conform to the corpus schema. Carries the location when
/// it is known (line 0 means "not line-addressable").
class ValidationError : public Error {
 public:
  ValidationError(std::string file, std::size_t line, std::string field,
                  const std::string& message);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

/// A metric is mathematically undefined for the given input (zero variance,
/// zero edges in scope, ...).
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : Error(message), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace peerscope
