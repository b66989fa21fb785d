#include "kinklab/kink_solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kinklab/errors.hpp"

namespace kinklab {

GridFunction taylor_remainder(const NonlinearitySpec& nl, const GridFunction& u0,
                              const GridFunction& phi) {
  require_same_grid(u0, phi);
  GridFunction out(u0.grid(), 0.0, 0.0);
  for (int i = 0; i < u0.size(); ++i) {
    const double base = u0[i];
    const double p = phi[i];
    out[i] = -nl.f(base + p) + nl.f(base) + nl.f_prime(base) * p;
  }
  return out;
}

double translation_multiplier(const NonlinearitySpec& nl, const GridFunction& u0,
                              const GridFunction& u0_derivative,
                              const KernelSpec& kernel, const GridFunction& phi,
                              double epsilon) {
  GridFunction rhs = taylor_remainder(nl, u0, phi);
  if (epsilon != 0.0) {
    rhs += epsilon * kernel.apply(phi);
    rhs += epsilon * kernel.apply(u0);
  }
  return inner_product(rhs, u0_derivative) /
         inner_product(u0_derivative, u0_derivative);
}

FixedPointMap::FixedPointMap(const KinkSolver& solver, double epsilon)
    : solver_(&solver), epsilon_(epsilon) {}

GridFunction FixedPointMap::right_side(const GridFunction& phi) const {
  GridFunction rhs = taylor_remainder(solver_->nl_, solver_->u0_, phi);
  if (epsilon_ != 0.0) {
    rhs += epsilon_ * solver_->kernel_.apply(phi);
    rhs += epsilon_ * solver_->delta_u0_;
  }
  return rhs;
}

double FixedPointMap::multiplier(const GridFunction& phi) const {
  return inner_product(right_side(phi), solver_->du0_) / solver_->du0_l2sq_;
}

GridFunction FixedPointMap::apply(const GridFunction& phi) const {
  GridFunction rhs = right_side(phi);
  const double b = inner_product(rhs, solver_->du0_) / solver_->du0_l2sq_;
  rhs -= b * solver_->du0_;
  return solver_->bordered_.solve(rhs).phi;
}

namespace {

const NonlinearitySpec& require_exact_kink(const NonlinearitySpec& nl) {
  if (!nl.has_exact_kink())
    throw ConfigError("nonlinearity '" + nl.name +
                      "' has no exact kink; the solver requires a closed-form "
                      "baseline");
  return nl;
}

double ball_radius_of(const SolverOptions& opts) {
  return opts.ball_radius.value_or(10.0 * opts.epsilon + 1e-6);
}

}  // namespace

KinkSolver::KinkSolver(const NonlinearitySpec& nl, const KernelSpec& kernel,
                       const Grid& grid)
    : nl_(require_exact_kink(nl)),
      kernel_(kernel),
      grid_(grid),
      u0_(GridFunction::sample(grid, *nl.exact_kink, 0.0, 1.0)),
      du0_(GridFunction::sample(grid, *nl.exact_kink_derivative, 0.0, 0.0)),
      delta_u0_(kernel.apply(u0_)),
      l0_(assemble_operator(nl, u0_, kernel, 0.0)),
      du0_l2sq_(inner_product(du0_, du0_)),
      bordered_(l0_, du0_) {}

KinkSolution solve_kink(const NonlinearitySpec& nl, const KernelSpec& kernel,
                        const Grid& grid, const SolverOptions& opts) {
  return KinkSolver(nl, kernel, grid).solve(opts);
}

KinkSolution KinkSolver::solve(const SolverOptions& opts) const {
  if (opts.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  if (opts.step_tolerance <= 0.0 || opts.max_iterations < 1)
    throw ConfigError("invalid solver options");
  if (opts.mode == SolverMode::Symmetric && !nl_.odd_symmetric)
    throw ConfigError("symmetric mode requires an odd-symmetric nonlinearity");
  return opts.mode == SolverMode::Projected ? solve_projected(opts)
                                            : solve_symmetric(opts);
}

KinkSolution KinkSolver::solve_projected(const SolverOptions& opts) const {
  const FixedPointMap T = map(opts.epsilon);
  const double radius = ball_radius_of(opts);
  GridFunction phi = opts.initial_fluctuation.value_or(GridFunction(grid_));
  std::vector<double> history;
  for (int n = 1; n <= opts.max_iterations; ++n) {
    GridFunction next = T.apply(phi);
    const double step = (next - phi).norm(NormKind::H2);
    history.push_back(step);
    if (next.norm(NormKind::H2) > radius)
      throw BallEscapeError(
          "iterate left the admissible ball (epsilon too large for the "
          "perturbation regime)",
          std::move(history));
    phi = std::move(next);
    if (step < opts.step_tolerance)
      return finish(std::move(phi), n, std::move(history), opts);
  }
  throw NoConvergenceError("fixed-point iteration did not converge in " +
                               std::to_string(opts.max_iterations) + " steps",
                           std::move(history));
}

KinkSolution KinkSolver::solve_symmetric(const SolverOptions& opts) const {
  if (!plain_.has_value()) plain_ = factor_operator(l0_);
  const FixedPointMap T = map(opts.epsilon);
  const double radius = ball_radius_of(opts);
  const int n_points = grid_.point_count();
  GridFunction phi = opts.initial_fluctuation.value_or(GridFunction(grid_));
  std::vector<double> history;
  for (int n = 1; n <= opts.max_iterations; ++n) {
    GridFunction rhs = T.right_side(phi);
    rhs[0] = 0.0;
    rhs[n_points - 1] = 0.0;
    const std::vector<double> x = plain_->solve(rhs.values());
    // Project onto the odd subspace; the orthogonality condition is then
    // satisfied automatically and no border is needed.
    GridFunction next(grid_, 0.0, 0.0);
    for (int i = 0; i < n_points; ++i)
      next[i] = 0.5 * (x[static_cast<std::size_t>(i)] -
                       x[static_cast<std::size_t>(n_points - 1 - i)]);
    const double step = (next - phi).norm(NormKind::H2);
    history.push_back(step);
    if (next.norm(NormKind::H2) > radius)
      throw BallEscapeError(
          "iterate left the admissible ball (epsilon too large for the "
          "perturbation regime)",
          std::move(history));
    phi = std::move(next);
    if (step < opts.step_tolerance)
      return finish(std::move(phi), n, std::move(history), opts);
  }
  throw NoConvergenceError("symmetric iteration did not converge in " +
                               std::to_string(opts.max_iterations) + " steps",
                           std::move(history));
}

KinkSolution KinkSolver::finish(GridFunction phi, int iterations,
                                std::vector<double> history,
                                const SolverOptions& opts) const {
  KinkSolution sol{u0_ + phi,          std::move(phi), 0.0, iterations,
                   std::move(history), 0.0,            opts.epsilon, opts.mode};
  sol.multiplier = map(opts.epsilon).multiplier(sol.phi);

  // Interior residual of the discrete equation at the solution.
  const GridFunction d2u = sol.u.second_derivative();
  GridFunction residual = kernel_.apply(sol.u);
  residual *= -opts.epsilon;
  const int n = grid_.point_count();
  for (int i = 0; i < n; ++i) residual[i] += d2u[i] + nl_.f(sol.u[i]);
  residual[0] = 0.0;
  residual[n - 1] = 0.0;
  sol.equation_residual = residual.norm(NormKind::L2);
  return sol;
}

}  // namespace kinklab
