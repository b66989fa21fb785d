#pragma once

#include <vector>

#include "kinklab/dense.hpp"
#include "kinklab/grid.hpp"
#include "kinklab/validation.hpp"

namespace kinklab {

/// Dense matrix form of the shift operator on a grid, plus the affine
/// boundary offsets:
///   Delta u = D * values + left_coefficient * left_limit
///                        + right_coefficient * right_limit.
/// D is symmetric; the offset vectors are nonzero only within k_max*m
/// indices of each end.
struct DeltaMatrix {
  Matrix matrix;
  std::vector<double> left_coefficient;
  std::vector<double> right_coefficient;

  std::vector<double> apply(const GridFunction& u) const;
};

/// Symmetric zero-sum coupling coefficients {a_k} of the nonlocal shift
/// operator (Delta u)(z) = sum_k a_k u(z - k). Storage is one-sided:
/// coefficients()[k] holds a_k = a_{-k} for 0 <= k <= k_max. The zero sum
/// is enforced exactly by recomputing a_0 from the tail, so constants are
/// annihilated and the far-field equilibria are preserved.
class KernelSpec {
 public:
  /// a_0 = -2, a_{+-1} = 1: the discrete Laplacian.
  static KernelSpec nearest_neighbor();

  /// a_k = decay^|k| for 1 <= |k| <= k_max. Requires the dropped tail
  /// sum_{k > k_max} decay^k k^2 to be below tail_tol.
  static KernelSpec exponential(double decay, int k_max, double tail_tol);

  /// User coefficients {a_0, a_1, ...}; a_0 is rebalanced to enforce the
  /// zero sum. Check validate_h2() afterwards.
  static KernelSpec custom(std::vector<double> coefficients);

  int k_max() const { return static_cast<int>(coeff_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeff_; }
  double coefficient(int k) const;  // a_k, either sign of k

  /// Sums over all k (both signs) of |a_k| and |a_k| k^2.
  double sum_abs() const { return sum_abs_; }
  double sum_abs_k2() const { return sum_abs_k2_; }

  /// (Delta u)(z_i) = sum_k a_k u(z_i - k); a shift by k moves exactly k*m
  /// indices, values beyond [-L, L] come from the constant far-field
  /// extension. The result carries limits 0.
  GridFunction apply(const GridFunction& u) const;

  DeltaMatrix matrix(const Grid& grid) const;

  ValidationReport validate_h2() const;

 private:
  explicit KernelSpec(std::vector<double> coeff);

  std::vector<double> coeff_;
  double sum_abs_ = 0.0;
  double sum_abs_k2_ = 0.0;
};

struct Lemma1Report {
  double delta_l2 = 0.0;  // ||Delta u||_L2
  double pairing = 0.0;   // (Delta u, u') with the discrete derivative
};

/// Measures the two conclusions of the shift-operator lemma on a profile
/// with far-field limits: Delta u is square integrable and (Delta u, u')
/// vanishes. The caller asserts the tolerances.
Lemma1Report check_lemma1(const KernelSpec& kernel, const GridFunction& u);

}  // namespace kinklab
