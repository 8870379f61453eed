#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace corrquad {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: reversed interval, n_pairs < 1, k outside its range, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a kernel or scaled kernel.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Derivative order requested beyond what the integrand provides.
class CapabilityError : public Error {
 public:
  CapabilityError(int requested, int available)
      : Error("derivative of order " + std::to_string(requested) +
              " requested, integrand provides up to order " +
              std::to_string(available)),
        requested_(requested),
        available_(available) {}

  int requested() const noexcept { return requested_; }
  int available() const noexcept { return available_; }

 private:
  int requested_;
  int available_;
};

/// A function or derivative evaluation failed or produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : Error(what + " at x = " + format_abscissa(abscissa)),
        abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  static std::string format_abscissa(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }

  double abscissa_;
};

/// The range and secant slope handed to a bound are mutually inconsistent.
class InconsistentRange : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration ran out of subdivisions before reaching tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value,
                   double best_error)
      : Error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

/// Expression text could not be parsed.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace corrquad
