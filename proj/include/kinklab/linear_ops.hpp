#pragma once

#include "kinklab/dense.hpp"
#include "kinklab/grid.hpp"
#include "kinklab/kernel.hpp"
#include "kinklab/nonlinearity.hpp"

namespace kinklab {

/// Discretization of phi -> phi'' + f'(w) phi - eps * Delta phi acting on
/// fluctuations that vanish at +-L. The matrix is exactly symmetric: the
/// boundary rows and columns are replaced by identity rows (Dirichlet), which
/// agrees with the operator on the constrained subspace.
struct LinearizedOperator {
  Grid grid;
  double epsilon = 0.0;
  GridFunction base_state;
  Matrix matrix;
};

LinearizedOperator assemble_operator(const NonlinearitySpec& nl,
                                     const GridFunction& base_state,
                                     const KernelSpec& kernel, double epsilon);

struct ConstrainedSolution {
  GridFunction phi;
  /// Lagrange multiplier of the orthogonality constraint, scaled so that
  /// mu ~ -(g, w)/||w||^2 when the operator is singular along w.
  double multiplier = 0.0;
};

/// Direct solver for the orthogonally constrained problem
///   A phi + mu s = g,   (phi, w_perp) = 0,
/// via one symmetric indefinite factorization of the bordered system
/// [A s; s^T 0], where s encodes the trapezoid weights of w_perp so the
/// constraint row is exactly the grid inner product.
class BorderedSolver {
 public:
  BorderedSolver(const LinearizedOperator& op, const GridFunction& w_perp);

  ConstrainedSolution solve(const GridFunction& g) const;

  const GridFunction& constraint_direction() const { return w_perp_; }
  const std::vector<double>& border() const { return border_; }

 private:
  Grid grid_;
  GridFunction w_perp_;
  std::vector<double> border_;
  SymmetricFactorization factorization_;
};

/// One-shot convenience wrapper around BorderedSolver.
ConstrainedSolution solve_orthogonal(const LinearizedOperator& op,
                                     const GridFunction& g,
                                     const GridFunction& w_perp);

/// Plain factorization of the operator matrix shifted by -shift on the
/// diagonal (shift = 0 gives the operator itself). Copies the matrix.
SymmetricFactorization factor_operator(const LinearizedOperator& op,
                                       double shift = 0.0);

}  // namespace kinklab
