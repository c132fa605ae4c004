#pragma once

#include <stdexcept>
#include <string>

namespace subpoisson {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An input exceeds a configured size cap (e.g. Bernoulli-sum length).
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A requested tolerance cannot be met at the configured precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge. Carries the last iterate and its
/// residual rendered at full precision.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::string last_iterate,
               std::string residual)
      : Error(what + " (last iterate " + last_iterate + ", residual " +
              residual + ")"),
        last_iterate_(std::move(last_iterate)),
        residual_(std::move(residual)) {}

  const std::string& last_iterate() const noexcept { return last_iterate_; }
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string last_iterate_;
  std::string residual_;
};

}  // namespace subpoisson
