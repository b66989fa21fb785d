#pragma once

#include <optional>
#include <vector>

#include "kinklab/grid.hpp"
#include "kinklab/kernel.hpp"
#include "kinklab/linear_ops.hpp"
#include "kinklab/nonlinearity.hpp"

namespace kinklab {

enum class SolverMode { Projected, Symmetric };

struct SolverOptions {
  double epsilon = 0.0;
  int max_iterations = 200;
  /// Iteration stops when the H2 norm of a step drops below this.
  double step_tolerance = 1e-12;
  /// Iterates whose H2 norm exceeds this are rejected (BallEscapeError).
  /// Default: 10*epsilon + 1e-6.
  std::optional<double> ball_radius;
  SolverMode mode = SolverMode::Projected;
  /// Optional warm start (continuation in epsilon). Defaults to zero.
  std::optional<GridFunction> initial_fluctuation;
};

struct KinkSolution {
  GridFunction u;    // u0 + phi, limits (0, 1)
  GridFunction phi;  // converged fluctuation, limits 0
  /// Multiplier of the translation mode at the fixed point; vanishes in the
  /// continuum, so its size certifies the discretization.
  double multiplier = 0.0;
  int iterations = 0;
  std::vector<double> step_history;  // H2 step norms
  /// L2 norm of the discrete equation residual u'' - eps*Delta u + f(u)
  /// over the interior points.
  double equation_residual = 0.0;
  double epsilon = 0.0;
  SolverMode mode = SolverMode::Projected;
};

/// Quadratic Taylor remainder of the reaction term about the baseline:
/// N(phi) = -f(u0 + phi) + f(u0) + f'(u0) phi, evaluated pointwise.
GridFunction taylor_remainder(const NonlinearitySpec& nl, const GridFunction& u0,
                              const GridFunction& phi);

/// Coefficient of the translation mode in the update's right side:
/// b(phi) = (eps*Delta phi + N(phi) + eps*Delta u0, u0') / ||u0'||_L2^2.
double translation_multiplier(const NonlinearitySpec& nl, const GridFunction& u0,
                              const GridFunction& u0_derivative,
                              const KernelSpec& kernel, const GridFunction& phi,
                              double epsilon);

class KinkSolver;

/// The projected fixed-point map: T(phi) solves the limit operator against
/// eps*Delta phi + N(phi) + eps*Delta u0 minus its translation-mode
/// component, returning an iterate orthogonal to u0'.
class FixedPointMap {
 public:
  FixedPointMap(const KinkSolver& solver, double epsilon);

  GridFunction apply(const GridFunction& phi) const;
  double multiplier(const GridFunction& phi) const;
  /// eps*Delta phi + N(phi) + eps*Delta u0, before the projection.
  GridFunction right_side(const GridFunction& phi) const;
  double epsilon() const { return epsilon_; }

 private:
  const KinkSolver* solver_;
  double epsilon_;
};

/// Computes kinks of u'' - eps*Delta u + f(u) = 0 by iterating the
/// fixed-point map from the uncoupled-limit kink. The factorized limit
/// operator is coupling-independent, so one solver instance serves a whole
/// sweep of epsilon values.
class KinkSolver {
 public:
  KinkSolver(const NonlinearitySpec& nl, const KernelSpec& kernel,
             const Grid& grid);

  KinkSolution solve(const SolverOptions& opts) const;

  FixedPointMap map(double epsilon) const { return {*this, epsilon}; }

  const NonlinearitySpec& nonlinearity() const { return nl_; }
  const KernelSpec& kernel() const { return kernel_; }
  const Grid& grid() const { return grid_; }
  const GridFunction& baseline() const { return u0_; }
  const GridFunction& baseline_derivative() const { return du0_; }
  const GridFunction& baseline_delta() const { return delta_u0_; }
  const LinearizedOperator& limit_operator() const { return l0_; }
  double mode_norm_sq() const { return du0_l2sq_; }

 private:
  friend class FixedPointMap;

  KinkSolution solve_projected(const SolverOptions& opts) const;
  KinkSolution solve_symmetric(const SolverOptions& opts) const;
  KinkSolution finish(GridFunction phi, int iterations,
                      std::vector<double> history,
                      const SolverOptions& opts) const;

  NonlinearitySpec nl_;
  KernelSpec kernel_;
  Grid grid_;
  GridFunction u0_, du0_, delta_u0_;
  LinearizedOperator l0_;
  double du0_l2sq_ = 0.0;
  BorderedSolver bordered_;
  mutable std::optional<SymmetricFactorization> plain_;  // symmetric mode
};

/// One-shot convenience wrapper.
KinkSolution solve_kink(const NonlinearitySpec& nl, const KernelSpec& kernel,
                        const Grid& grid, const SolverOptions& opts);

}  // namespace kinklab
