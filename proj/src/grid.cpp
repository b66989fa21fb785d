#include "kinklab/grid.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "kinklab/compute.hpp"
#include "kinklab/errors.hpp"

namespace kinklab {

Grid::Grid(double half_width, int subdivisions_per_unit)
    : half_span_(0), m_(subdivisions_per_unit) {
  if (m_ < 1) throw ConfigError("grid subdivisions must be >= 1");
  if (!(half_width > 0)) throw ConfigError("grid half width must be positive");
  const double span = half_width * m_;
  const double rounded = std::round(span);
  if (std::abs(span - rounded) > 1e-9 * std::max(1.0, span))
    throw ConfigError("grid half width must be a multiple of the spacing 1/m");
  half_span_ = static_cast<int>(rounded);
}

GridFunction::GridFunction(const Grid& grid, double left_limit, double right_limit)
    : grid_(grid),
      values_(static_cast<std::size_t>(grid.point_count()), 0.0),
      left_limit_(left_limit),
      right_limit_(right_limit) {}

GridFunction GridFunction::sample(const Grid& grid,
                                  const std::function<double(double)>& f,
                                  double left_limit, double right_limit) {
  GridFunction u(grid, left_limit, right_limit);
  for (int i = 0; i < u.size(); ++i) u[i] = f(grid.point(i));
  return u;
}

GridFunction GridFunction::derivative() const {
  GridFunction d(grid_, 0.0, 0.0);
  const double inv2h = 0.5 * grid_.subdivisions();
  const int n = size();
  for (int i = 0; i < n; ++i)
    d[i] = (value_extended(i + 1) - value_extended(i - 1)) * inv2h;
  return d;
}

GridFunction GridFunction::second_derivative() const {
  GridFunction d(grid_, 0.0, 0.0);
  const double invh2 =
      static_cast<double>(grid_.subdivisions()) * grid_.subdivisions();
  const int n = size();
  for (int i = 0; i < n; ++i)
    d[i] = (value_extended(i + 1) - 2.0 * values_[static_cast<std::size_t>(i)] +
            value_extended(i - 1)) *
           invh2;
  return d;
}

double GridFunction::norm(NormKind kind) const {
  switch (kind) {
    case NormKind::Linf:
      return max_abs();
    case NormKind::L2:
      return std::sqrt(inner_product(*this, *this));
    case NormKind::H1: {
      const GridFunction d1 = derivative();
      return std::sqrt(inner_product(*this, *this) + inner_product(d1, d1));
    }
    case NormKind::H2: {
      const GridFunction d1 = derivative();
      const GridFunction d2 = second_derivative();
      return std::sqrt(inner_product(*this, *this) + inner_product(d1, d1) +
                       inner_product(d2, d2));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (int i = 0; i < size(); ++i) values_[static_cast<std::size_t>(i)] += other[i];
  left_limit_ += other.left_limit_;
  right_limit_ += other.right_limit_;
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (int i = 0; i < size(); ++i) values_[static_cast<std::size_t>(i)] -= other[i];
  left_limit_ -= other.left_limit_;
  right_limit_ -= other.right_limit_;
  return *this;
}

GridFunction& GridFunction::operator*=(double a) {
  for (double& v : values_) v *= a;
  left_limit_ *= a;
  right_limit_ *= a;
  return *this;
}

void GridFunction::write_csv(std::ostream& os) const {
  os.precision(17);
  os << "z,value\n";
  for (int i = 0; i < size(); ++i)
    os << grid_.point(i) << ',' << values_[static_cast<std::size_t>(i)] << '\n';
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double a, GridFunction u) { return u *= a; }

double inner_product(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  const double full = compute::dot(u.values(), v.values());
  const int n = u.size();
  const double ends = 0.5 * (u[0] * v[0] + u[n - 1] * v[n - 1]);
  return (full - ends) * u.grid().spacing();
}

double interpolate_cubic(const GridFunction& u, double z) {
  const Grid& g = u.grid();
  const double s = z * g.subdivisions() + g.center_index();
  const double fl = std::floor(s);
  const std::int64_t j = static_cast<std::int64_t>(fl);
  const double t = s - fl;
  // Lagrange weights for nodes {-1, 0, 1, 2} at local coordinate t.
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * u.value_extended(j - 1) + w1 * u.value_extended(j) +
         w2 * u.value_extended(j + 1) + w3 * u.value_extended(j + 2);
}

void require_same_grid(const GridFunction& u, const GridFunction& v) {
  if (!(u.grid() == v.grid()))
    throw GridMismatchError("grid functions live on different grids");
}

}  // namespace kinklab
