#include "kinklab/dense.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <utility>

#include "kinklab/compute.hpp"
#include "kinklab/errors.hpp"

namespace kinklab {

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = j + 1; i < n_; ++i)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

std::vector<double> Matrix::apply_symmetric(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  compute::symmetric_matvec(a_.data(), n_, x, y);
  return y;
}

SymmetricFactorization SymmetricFactorization::factor(Matrix&& a) {
  static_assert(sizeof(lapack_int) == sizeof(int));
  SymmetricFactorization f;
  f.n_ = a.dim();
  f.a_ = a.release();  // factor in place, no copy
  f.ipiv_.resize(f.n_);
  const lapack_int n = static_cast<lapack_int>(f.n_);
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, f.a_.data(),
                                         n, f.ipiv_.data());
  if (info != 0)
    throw SolveFailure(
        "symmetric factorization failed (dsytrf info=" + std::to_string(info) +
            (info > 0 ? ", singular pivot block" : ", bad argument") + ")",
        static_cast<int>(info));
  return f;
}

void SymmetricFactorization::solve_in_place(std::span<double> rhs) const {
  const lapack_int n = static_cast<lapack_int>(n_);
  const lapack_int info = LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, a_.data(),
                                         n, ipiv_.data(), rhs.data(), n);
  if (info != 0)
    throw SolveFailure("symmetric solve failed (dsytrs info=" +
                           std::to_string(info) + ")",
                       static_cast<int>(info));
}

std::vector<double> SymmetricFactorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

}  // namespace kinklab
