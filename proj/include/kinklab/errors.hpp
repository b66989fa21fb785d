#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kinklab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two grid functions from different grids were combined.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or precondition violation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A direct factorization or linear solve failed; message carries the
/// pivot/condition diagnostic.
class SolveFailure : public Error {
 public:
  SolveFailure(const std::string& what, int lapack_info)
      : Error(what), info_(lapack_info) {}
  int lapack_info() const { return info_; }

 private:
  int info_ = 0;
};

/// An iteration exhausted its budget. Carries the step-norm history so the
/// caller can see how far it got.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& step_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// The fixed-point iterate left the admissible ball; the coupling is too
/// large for the perturbation regime.
class BallEscapeError : public Error {
 public:
  BallEscapeError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& step_history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// No 1/2-crossing found when locating a front.
class NoFrontError : public Error {
 public:
  using Error::Error;
};

/// A sweep was requested with no coupling values.
class EmptySweepError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinklab
