#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace kinklab {

/// Uniform symmetric grid on [-L, L] with spacing h = 1/m, so that the
/// integer shifts of the nonlocal operator map grid points to grid points
/// exactly. The subdivision count m is the primary datum; L must be a
/// positive multiple of h.
class Grid {
 public:
  Grid(double half_width, int subdivisions_per_unit);

  double half_width() const { return static_cast<double>(half_span_) / m_; }
  int subdivisions() const { return m_; }
  double spacing() const { return 1.0 / m_; }
  int point_count() const { return 2 * half_span_ + 1; }
  int center_index() const { return half_span_; }

  /// z_i = -L + i*h, computed as (i - L*m)/m so the grid is exactly
  /// symmetric about zero.
  double point(int i) const { return static_cast<double>(i - half_span_) / m_; }

  bool operator==(const Grid&) const = default;

 private:
  int half_span_;  // L*m
  int m_;
};

enum class NormKind { L2, H1, H2, Linf };

/// A sampled real-line function with far-field limit values. Outside [-L, L]
/// the function is extended by its limits (constant extension); fluctuation
/// profiles carry limits 0.
class GridFunction {
 public:
  explicit GridFunction(const Grid& grid, double left_limit = 0.0,
                        double right_limit = 0.0);

  static GridFunction sample(const Grid& grid,
                             const std::function<double(double)>& f,
                             double left_limit, double right_limit);

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }

  double left_limit() const { return left_limit_; }
  double right_limit() const { return right_limit_; }
  void set_limits(double left, double right) {
    left_limit_ = left;
    right_limit_ = right;
  }

  /// Value at index i with constant far-field extension for i outside range.
  double value_extended(std::int64_t i) const {
    if (i < 0) return left_limit_;
    if (i >= static_cast<std::int64_t>(values_.size())) return right_limit_;
    return values_[static_cast<std::size_t>(i)];
  }

  /// Second-order central difference; ghost points use the far-field limits.
  /// The result carries limits 0.
  GridFunction derivative() const;
  GridFunction second_derivative() const;

  double norm(NormKind kind) const;
  double max_abs() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double a);

  /// Columns: z,value.
  void write_csv(std::ostream& os) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  double left_limit_;
  double right_limit_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double a, GridFunction u);

/// Trapezoid approximation of the line integral of u*v over [-L, L].
double inner_product(const GridFunction& u, const GridFunction& v);

/// 4-point Lagrange interpolation at coordinate z, using the constant
/// extension outside the grid.
double interpolate_cubic(const GridFunction& u, double z);

void require_same_grid(const GridFunction& u, const GridFunction& v);

}  // namespace kinklab
