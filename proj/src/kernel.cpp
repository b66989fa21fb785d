#include "kinklab/kernel.hpp"

#include <cmath>
#include <cstdint>

#include "kinklab/compute.hpp"
#include "kinklab/errors.hpp"

namespace kinklab {

KernelSpec::KernelSpec(std::vector<double> coeff) : coeff_(std::move(coeff)) {
  if (coeff_.empty()) throw ConfigError("kernel needs at least a_0");
  // Rebalance a_0 so the full sum over both signs vanishes exactly.
  double tail = 0.0;
  for (std::size_t k = 1; k < coeff_.size(); ++k) tail += coeff_[k];
  coeff_[0] = -2.0 * tail;
  sum_abs_ = std::abs(coeff_[0]);
  sum_abs_k2_ = 0.0;
  for (std::size_t k = 1; k < coeff_.size(); ++k) {
    sum_abs_ += 2.0 * std::abs(coeff_[k]);
    sum_abs_k2_ += 2.0 * std::abs(coeff_[k]) * static_cast<double>(k) * k;
  }
}

KernelSpec KernelSpec::nearest_neighbor() { return KernelSpec({-2.0, 1.0}); }

KernelSpec KernelSpec::exponential(double decay, int k_max, double tail_tol) {
  if (!(decay > 0.0 && decay < 1.0))
    throw ConfigError("exponential kernel needs decay in (0,1)");
  if (k_max < 1) throw ConfigError("exponential kernel needs k_max >= 1");
  // Dropped tail sum_{k > k_max} decay^k k^2, from the closed form of the
  // full series minus the kept part.
  const double r = decay;
  const double full = r * (1.0 + r) / ((1.0 - r) * (1.0 - r) * (1.0 - r));
  double kept = 0.0;
  for (int k = 1; k <= k_max; ++k)
    kept += std::pow(r, k) * static_cast<double>(k) * k;
  const double tail = full - kept;
  if (!(tail < tail_tol))
    throw ConfigError("exponential kernel truncation tail exceeds tail_tol");
  std::vector<double> coeff(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) coeff[static_cast<std::size_t>(k)] = std::pow(r, k);
  return KernelSpec(std::move(coeff));
}

KernelSpec KernelSpec::custom(std::vector<double> coefficients) {
  return KernelSpec(std::move(coefficients));
}

double KernelSpec::coefficient(int k) const {
  const int a = std::abs(k);
  if (a > k_max()) return 0.0;
  return coeff_[static_cast<std::size_t>(a)];
}

GridFunction KernelSpec::apply(const GridFunction& u) const {
  GridFunction out(u.grid(), 0.0, 0.0);
  compute::shift_convolve(u.values(), u.left_limit(), u.right_limit(), coeff_,
                          u.grid().subdivisions(), out.values());
  return out;
}

DeltaMatrix KernelSpec::matrix(const Grid& grid) const {
  const std::size_t n = static_cast<std::size_t>(grid.point_count());
  const int m = grid.subdivisions();
  DeltaMatrix dm;
  dm.matrix = Matrix(n);
  dm.left_coefficient.assign(n, 0.0);
  dm.right_coefficient.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (int k = -k_max(); k <= k_max(); ++k) {
      // Row i reads u at index i - k*m; as a column-j contribution this is
      // i = j + k*m (a_k symmetric).
      const std::int64_t i = static_cast<std::int64_t>(j) +
                             static_cast<std::int64_t>(k) * m;
      if (i >= 0 && i < static_cast<std::int64_t>(n))
        dm.matrix(static_cast<std::size_t>(i), j) += coefficient(k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = -k_max(); k <= k_max(); ++k) {
      const std::int64_t src = static_cast<std::int64_t>(i) -
                               static_cast<std::int64_t>(k) * m;
      if (src < 0) dm.left_coefficient[i] += coefficient(k);
      else if (src >= static_cast<std::int64_t>(n))
        dm.right_coefficient[i] += coefficient(k);
    }
  }
  return dm;
}

std::vector<double> DeltaMatrix::apply(const GridFunction& u) const {
  std::vector<double> out = matrix.apply_symmetric(u.values());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += left_coefficient[i] * u.left_limit() +
              right_coefficient[i] * u.right_limit();
  return out;
}

ValidationReport KernelSpec::validate_h2() const {
  ValidationReport report;
  report.subject = "kernel";
  const double a0 = coeff_[0];
  report.clauses.push_back({"a_0 < 0", a0 < 0.0, a0, {}});
  double total = coeff_[0];
  for (std::size_t k = 1; k < coeff_.size(); ++k) total += 2.0 * coeff_[k];
  report.clauses.push_back({"sum a_k = 0", std::abs(total) <= 1e-14 * sum_abs_,
                            total, "a_0 rebalanced at construction"});
  report.clauses.push_back(
      {"sum |a_k| k^2 finite", std::isfinite(sum_abs_k2_), sum_abs_k2_, {}});
  return report;
}

Lemma1Report check_lemma1(const KernelSpec& kernel, const GridFunction& u) {
  const GridFunction du = kernel.apply(u);
  Lemma1Report r;
  r.delta_l2 = du.norm(NormKind::L2);
  r.pairing = inner_product(du, u.derivative());
  return r;
}

}  // namespace kinklab
