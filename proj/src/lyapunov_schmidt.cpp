#include "kinklab/lyapunov_schmidt.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "kinklab/errors.hpp"
#include "kinklab/kink_solver.hpp"

namespace kinklab {

namespace {

// Inverse iteration on the negated operator through a prepared factorization
// of (A - shift I). Rayleigh quotients and residuals use the true negated
// operator. `deflate` (optional) is removed from every iterate.
struct InverseIterationResult {
  double lambda = 0.0;
  GridFunction mode;
  int iterations = 0;
  double residual = 0.0;
};

InverseIterationResult inverse_iteration(const LinearizedOperator& op,
                                         const SymmetricFactorization& fact,
                                         GridFunction x,
                                         const GridFunction* deflate,
                                         double deflate_norm_sq, int max_iter,
                                         double tol, double stagnation_floor) {
  const int n = op.grid.point_count();
  const auto project = [&](GridFunction& v) {
    if (deflate != nullptr)
      v -= (inner_product(v, *deflate) / deflate_norm_sq) * (*deflate);
    v[0] = 0.0;
    v[n - 1] = 0.0;
  };

  project(x);
  x *= 1.0 / x.norm(NormKind::H2);

  double lambda = 0.0;
  double residual = 0.0;
  double prev_residual = std::numeric_limits<double>::infinity();
  std::vector<double> history;
  int it = 1;
  for (; it <= max_iter; ++it) {
    std::vector<double> y = fact.solve(x.values());
    GridFunction next(op.grid, 0.0, 0.0);
    for (int i = 0; i < n; ++i) next[i] = -y[static_cast<std::size_t>(i)];
    project(next);
    next *= 1.0 / next.norm(NormKind::H2);

    // Rayleigh quotient of the negated operator in the L2 pairing.
    const std::vector<double> ax = op.matrix.apply_symmetric(next.values());
    GridFunction m_of_x(op.grid, 0.0, 0.0);
    for (int i = 0; i < n; ++i) m_of_x[i] = -ax[static_cast<std::size_t>(i)];
    lambda = inner_product(m_of_x, next) / inner_product(next, next);
    GridFunction r = m_of_x - lambda * next;
    residual = r.norm(NormKind::L2);
    history.push_back(residual);
    x = std::move(next);
    if (residual <= tol) break;
    if (residual >= 0.9 * prev_residual && residual <= stagnation_floor) break;
    prev_residual = residual;
  }
  if (it > max_iter)
    throw NoConvergenceError("inverse iteration did not converge",
                             std::move(history));
  return {lambda, std::move(x), it, residual};
}

SymmetricFactorization factor_possibly_singular(const LinearizedOperator& op) {
  try {
    return factor_operator(op);
  } catch (const SolveFailure&) {
    // Singular to working precision; retreat to a small diagonal shift on
    // the order of the discrete zero-mode floor.
    const double h = op.grid.spacing();
    return factor_operator(op, 0.318 * h * h);
  }
}

}  // namespace

ReductionAnalysis::ReductionAnalysis(const NonlinearitySpec& nl,
                                     const KernelSpec& kernel, const Grid& grid)
    : nl_(nl),
      kernel_(kernel),
      grid_(grid),
      u0_(nl.has_exact_kink()
              ? GridFunction::sample(grid, *nl.exact_kink, 0.0, 1.0)
              : throw ConfigError("reduction analysis requires a closed-form "
                                  "baseline kink")),
      du0_(GridFunction::sample(grid, *nl.exact_kink_derivative, 0.0, 0.0)),
      delta_u0_(kernel.apply(u0_)),
      u1_(grid),
      delta_u1_(grid) {
  const LinearizedOperator l0 = assemble_operator(nl_, u0_, kernel_, 0.0);
  u1_ = BorderedSolver(l0, du0_).solve(delta_u0_).phi;
  delta_u1_ = kernel_.apply(u1_);
}

GridFunction ReductionAnalysis::corrected_profile(double eps) const {
  return u0_ + eps * u1_;
}

GridFunction ReductionAnalysis::correction_residual(double eps) const {
  GridFunction g = taylor_remainder(nl_, u0_, eps * u1_);
  g += (eps * eps) * delta_u1_;
  return g;
}

double ReductionAnalysis::correction_residual_gap(double eps) const {
  const GridFunction direct = correction_residual(eps);
  const GridFunction u_ap = corrected_profile(eps);
  const GridFunction d2u1 = u1_.second_derivative();
  const int n = grid_.point_count();
  double num = 0.0, den = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    // u_ap'' with the baseline part taken exactly (u0'' = -f(u0)).
    const double d2uap = -nl_.f(u0_[i]) + eps * d2u1[i];
    const double other =
        -(d2uap - eps * (delta_u0_[i] + eps * delta_u1_[i]) + nl_.f(u_ap[i]));
    num = std::max(num, std::abs(direct[i] - other));
    den = std::max(den, std::abs(direct[i]));
  }
  if (den == 0.0) return num;
  return num / den;
}

EigenPair ReductionAnalysis::principal_eigenpair(double eps) const {
  const LinearizedOperator op =
      assemble_operator(nl_, corrected_profile(eps), kernel_, eps);
  const SymmetricFactorization fact = factor_possibly_singular(op);
  InverseIterationResult r = inverse_iteration(
      op, fact, du0_, nullptr, 0.0, 500, 1e-12, 1e-9);
  if (inner_product(r.mode, du0_) < 0.0) r.mode *= -1.0;
  return {r.lambda, std::move(r.mode), r.iterations, r.residual};
}

SpectralDiagnostics ReductionAnalysis::spectral_diagnostics(double eps) const {
  const LinearizedOperator op =
      assemble_operator(nl_, corrected_profile(eps), kernel_, eps);
  const SymmetricFactorization fact = factor_possibly_singular(op);
  InverseIterationResult r = inverse_iteration(
      op, fact, du0_, nullptr, 0.0, 500, 1e-12, 1e-9);
  if (inner_product(r.mode, du0_) < 0.0) r.mode *= -1.0;

  // Deflated restart from a profile with no parity, so no candidate mode is
  // missed by symmetry.
  GridFunction seed = GridFunction::sample(
      grid_, [](double z) { return std::exp(-0.4 * (z - 0.6) * (z - 0.6)); },
      0.0, 0.0);
  const double mode_sq = inner_product(r.mode, r.mode);
  InverseIterationResult g = inverse_iteration(
      op, fact, std::move(seed), &r.mode, mode_sq, 300, 1e-8, 1e-4);

  SpectralDiagnostics out{
      {r.lambda, std::move(r.mode), r.iterations, r.residual},
      g.lambda,
      g.iterations,
      g.residual};
  return out;
}

double ReductionAnalysis::eigenvalue_slope_estimate() const {
  GridFunction integrand(grid_, 0.0, 0.0);
  const GridFunction delta_du0 = kernel_.apply(du0_);
  for (int i = 0; i < grid_.point_count(); ++i)
    integrand[i] =
        nl_.f_double_prime(u0_[i]) * u1_[i] * du0_[i] - delta_du0[i];
  return inner_product(du0_, integrand) / inner_product(du0_, du0_);
}

ReductionAnalysis::Complement ReductionAnalysis::complement_solution(
    double a, double eps, const EigenPair& pair) const {
  return BifurcationSection(*this, eps, pair).complement(a);
}

double ReductionAnalysis::bifurcation_value(double a, double eps,
                                            const EigenPair& pair) const {
  return BifurcationSection(*this, eps, pair).value(a);
}

BifurcationSection::BifurcationSection(const ReductionAnalysis& analysis,
                                       double eps, EigenPair pair)
    : analysis_(&analysis),
      eps_(eps),
      pair_(std::move(pair)),
      u_ap_(analysis.corrected_profile(eps)),
      residual_(analysis.correction_residual(eps)),
      mode_l2sq_(inner_product(pair_.mode, pair_.mode)),
      solver_(assemble_operator(analysis.nl_, u_ap_, analysis.kernel_, eps),
              pair_.mode) {}

ReductionAnalysis::Complement BifurcationSection::complement(double a) const {
  const NonlinearitySpec& nl = analysis_->nl_;
  const GridFunction scaled_mode = a * pair_.mode;
  GridFunction v(analysis_->grid_);
  std::vector<double> history;
  for (int it = 1; it <= 100; ++it) {
    GridFunction w = taylor_remainder(nl, u_ap_, scaled_mode + v);
    w += residual_;
    w -= (inner_product(w, pair_.mode) / mode_l2sq_) * pair_.mode;
    GridFunction next = solver_.solve(w).phi;
    const double step = (next - v).norm(NormKind::H2);
    history.push_back(step);
    v = std::move(next);
    if (step < 1e-12) return {std::move(v), it};
  }
  throw NoConvergenceError(
      "complement iteration left the contraction neighborhood",
      std::move(history));
}

double BifurcationSection::value(double a) const {
  const ReductionAnalysis::Complement comp = complement(a);
  GridFunction w =
      taylor_remainder(analysis_->nl_, u_ap_, a * pair_.mode + comp.v);
  w += residual_;
  return -a * pair_.lambda * mode_l2sq_ - inner_product(w, pair_.mode);
}

}  // namespace kinklab
