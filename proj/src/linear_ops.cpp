#include "kinklab/linear_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "kinklab/errors.hpp"

namespace kinklab {

LinearizedOperator assemble_operator(const NonlinearitySpec& nl,
                                     const GridFunction& base_state,
                                     const KernelSpec& kernel, double epsilon) {
  if (epsilon < 0.0) throw ConfigError("coupling epsilon must be >= 0");
  const Grid grid = base_state.grid();
  const std::size_t n = static_cast<std::size_t>(grid.point_count());
  const int m = grid.subdivisions();
  const double invh2 = static_cast<double>(m) * m;

  LinearizedOperator op{grid, epsilon, base_state, Matrix(n)};
  Matrix& a = op.matrix;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    a(i, i - 1) += invh2;
    a(i, i) += -2.0 * invh2 + nl.f_prime(base_state[static_cast<int>(i)]);
    a(i, i + 1) += invh2;
  }
  if (epsilon > 0.0) {
    const int kmax = kernel.k_max();
    for (std::size_t j = 0; j < n; ++j) {
      for (int k = -kmax; k <= kmax; ++k) {
        const std::int64_t i = static_cast<std::int64_t>(j) +
                               static_cast<std::int64_t>(k) * m;
        if (i >= 0 && i < static_cast<std::int64_t>(n))
          a(static_cast<std::size_t>(i), j) -= epsilon * kernel.coefficient(k);
      }
    }
  }
  // Dirichlet rows and columns keep the matrix symmetric; fluctuations
  // vanish at the ends so dropping the columns changes nothing.
  for (const std::size_t b : {std::size_t{0}, n - 1}) {
    for (std::size_t j = 0; j < n; ++j) {
      a(b, j) = 0.0;
      a(j, b) = 0.0;
    }
    a(b, b) = 1.0;
  }
  return op;
}

BorderedSolver::BorderedSolver(const LinearizedOperator& op,
                               const GridFunction& w_perp)
    : grid_(op.grid), w_perp_(w_perp) {
  if (!(w_perp.grid() == op.grid))
    throw GridMismatchError("constraint direction lives on a different grid");
  const std::size_t n = op.matrix.dim();
  border_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    border_[i] = -w_perp[static_cast<int>(i)];

  Matrix bordered(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    auto dst = bordered.column(j);
    auto src = op.matrix.column(j);
    std::copy(src.begin(), src.end(), dst.begin());
    dst[n] = border_[j];
  }
  auto last = bordered.column(n);
  std::copy(border_.begin(), border_.end(), last.begin());
  last[n] = 0.0;
  factorization_ = SymmetricFactorization::factor(std::move(bordered));
}

ConstrainedSolution BorderedSolver::solve(const GridFunction& g) const {
  if (!(g.grid() == grid_))
    throw GridMismatchError("right side lives on a different grid");
  const std::size_t n = static_cast<std::size_t>(grid_.point_count());
  std::vector<double> rhs(n + 1, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) rhs[i] = g[static_cast<int>(i)];
  factorization_.solve_in_place(rhs);
  ConstrainedSolution out{GridFunction(grid_, 0.0, 0.0), rhs[n]};
  for (std::size_t i = 0; i < n; ++i) out.phi[static_cast<int>(i)] = rhs[i];
  return out;
}

ConstrainedSolution solve_orthogonal(const LinearizedOperator& op,
                                     const GridFunction& g,
                                     const GridFunction& w_perp) {
  return BorderedSolver(op, w_perp).solve(g);
}

SymmetricFactorization factor_operator(const LinearizedOperator& op,
                                       double shift) {
  const std::size_t n = op.matrix.dim();
  Matrix copy(n);
  std::copy(op.matrix.data(), op.matrix.data() + n * n, copy.data());
  if (shift != 0.0)
    for (std::size_t i = 0; i < n; ++i) copy(i, i) -= shift;
  return SymmetricFactorization::factor(std::move(copy));
}

}  // namespace kinklab
