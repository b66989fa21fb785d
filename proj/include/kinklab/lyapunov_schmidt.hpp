#pragma once

#include <vector>

#include "kinklab/grid.hpp"
#include "kinklab/kernel.hpp"
#include "kinklab/linear_ops.hpp"
#include "kinklab/nonlinearity.hpp"

namespace kinklab {

/// Principal eigenpair of the negated linearized operator at the corrected
/// profile. The eigenfunction is H2-normalized and sign-fixed against the
/// translation mode.
struct EigenPair {
  double lambda = 0.0;
  GridFunction mode;
  int iterations = 0;
  double residual = 0.0;  // L2 norm of (-L)mode - lambda*mode
};

struct SpectralDiagnostics {
  EigenPair principal;
  double gap = 0.0;  // second-smallest eigenvalue estimate
  int gap_iterations = 0;
  double gap_residual = 0.0;
};

/// Diagnostics of the reduction approach: the first-order corrector, the
/// improved residual, the near-zero eigenpair, its vanishing linear drift,
/// and the scalar bifurcation function.
class ReductionAnalysis {
 public:
  ReductionAnalysis(const NonlinearitySpec& nl, const KernelSpec& kernel,
                    const Grid& grid);

  const NonlinearitySpec& nonlinearity() const { return nl_; }
  const KernelSpec& kernel() const { return kernel_; }
  const Grid& grid() const { return grid_; }
  const GridFunction& baseline() const { return u0_; }
  const GridFunction& baseline_derivative() const { return du0_; }
  const GridFunction& baseline_delta() const { return delta_u0_; }

  /// First-order corrector u1: solves the limit operator against Delta u0,
  /// orthogonally to the translation mode. Coupling-independent.
  const GridFunction& corrector() const { return u1_; }

  /// u0 + eps * u1.
  GridFunction corrected_profile(double eps) const;

  /// Residual of the corrected profile: eps^2 * Delta u1 + N(eps u1).
  GridFunction correction_residual(double eps) const;

  /// Max relative deviation between the two algebraically equal forms of the
  /// correction residual (direct formula vs. equation residual), interior
  /// points only.
  double correction_residual_gap(double eps) const;

  /// Inverse iteration for the isolated near-zero eigenpair of the negated
  /// operator at the corrected profile.
  EigenPair principal_eigenpair(double eps) const;

  /// Eigenpair plus a deflated estimate of the next eigenvalue, sharing one
  /// factorization.
  SpectralDiagnostics spectral_diagnostics(double eps) const;

  /// The linear coefficient of the principal eigenvalue at zero coupling:
  /// (u0', f''(u0) u1 u0' - Delta u0') / ||u0'||_L2^2. Vanishes identically
  /// in the continuum; the returned size certifies the discretization.
  double eigenvalue_slope_estimate() const;

  struct Complement {
    GridFunction v;
    int iterations = 0;
  };

  /// Solves the complement equation for v*(a, eps) by Picard iteration on
  /// the projected problem, reusing a caller-supplied eigenpair.
  Complement complement_solution(double a, double eps,
                                 const EigenPair& pair) const;

  /// Scalar bifurcation function
  /// B(a, eps) = -a lambda ||mode||_L2^2 - (N_ap(a mode + v*) + G, mode).
  double bifurcation_value(double a, double eps, const EigenPair& pair) const;

 private:
  friend class BifurcationSection;

  NonlinearitySpec nl_;
  KernelSpec kernel_;
  Grid grid_;
  GridFunction u0_, du0_, delta_u0_;
  GridFunction u1_, delta_u1_;
};

/// Fixed-coupling section of the bifurcation function; holds the bordered
/// factorization so that repeated evaluations in `a` are cheap.
class BifurcationSection {
 public:
  BifurcationSection(const ReductionAnalysis& analysis, double eps,
                     EigenPair pair);

  const EigenPair& eigenpair() const { return pair_; }
  ReductionAnalysis::Complement complement(double a) const;
  double value(double a) const;  // B(a, eps)

 private:
  const ReductionAnalysis* analysis_;
  double eps_;
  EigenPair pair_;
  GridFunction u_ap_;
  GridFunction residual_;  // G(eps)
  double mode_l2sq_ = 0.0;
  BorderedSolver solver_;
};

}  // namespace kinklab
