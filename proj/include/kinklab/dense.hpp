#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kinklab {

/// Dense square matrix, column-major (LAPACK layout).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i + j * n_]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i + j * n_]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::span<double> column(std::size_t j) { return {a_.data() + j * n_, n_}; }
  std::span<const double> column(std::size_t j) const {
    return {a_.data() + j * n_, n_};
  }

  double max_abs() const;
  /// max |A - A^T|; zero for exactly symmetric assembly.
  double max_asymmetry() const;

  /// y = A x, valid for symmetric content (uses the column = row identity).
  std::vector<double> apply_symmetric(std::span<const double> x) const;

  /// Moves the storage out; the matrix is empty afterwards.
  std::vector<double> release() {
    n_ = 0;
    return std::move(a_);
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Bunch-Kaufman factorization of a symmetric indefinite matrix
/// (LAPACK dsytrf). Consumes the matrix storage; solves are in place
/// back-substitutions (dsytrs).
class SymmetricFactorization {
 public:
  SymmetricFactorization() = default;

  /// Factors in place. Throws SolveFailure with the zero-pivot index when
  /// the matrix is singular to working precision.
  static SymmetricFactorization factor(Matrix&& a);

  std::size_t dim() const { return n_; }
  void solve_in_place(std::span<double> rhs) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;     // packed factors
  std::vector<int> ipiv_;
};

}  // namespace kinklab
