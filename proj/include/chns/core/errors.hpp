#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chns {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveDensity : public Error {
 public:
  explicit NonPositiveDensity(std::size_t index, double value)
      : Error("non-positive density " + std::to_string(value) + " at node " +
              std::to_string(index)),
        index_(index),
        value_(value) {}

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class SolverDivergence : public Error {
 public:
  SolverDivergence(std::string system, double residual)
      : Error("linear solver failed on " + system +
              " system, relative residual " + std::to_string(residual)),
        system_(std::move(system)),
        residual_(residual) {}

  const std::string& system() const noexcept { return system_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string system_;
  double residual_;
};

class ZeroDiagonal : public Error {
 public:
  explicit ZeroDiagonal(std::size_t row)
      : Error("zero diagonal entry in row " + std::to_string(row)), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UnknownScheme : public Error {
 public:
  explicit UnknownScheme(const std::string& name)
      : Error("unknown time-stepping scheme '" + name + "'") {}
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// max|c| reached the configured threshold during a step.
class BoundViolation : public Error {
 public:
  explicit BoundViolation(double max_abs_c)
      : Error("concentration bound violated, max|c| = " +
              std::to_string(max_abs_c)),
        max_abs_c_(max_abs_c) {}
  double max_abs_c() const noexcept { return max_abs_c_; }

 private:
  double max_abs_c_;
};

class OutsideSpinodal : public Error {
 public:
  explicit OutsideSpinodal(double c0)
      : Error("base concentration " + std::to_string(c0) +
              " is outside the spinodal interval"),
        c0_(c0) {}
  double c0() const noexcept { return c0_; }

 private:
  double c0_;
};

class AmplitudeTooLarge : public Error {
 public:
  using Error::Error;
};

class StepRejectedTooManyTimes : public Error {
 public:
  StepRejectedTooManyTimes(double t, int retries)
      : Error("step at t=" + std::to_string(t) + " rejected " +
              std::to_string(retries) + " times"),
        t_(t),
        retries_(retries) {}
  double time() const noexcept { return t_; }
  int retries() const noexcept { return retries_; }

 private:
  double t_;
  int retries_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace chns
