#include "kinklab/nonlinearity.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kinklab/errors.hpp"

namespace kinklab {

namespace {

constexpr double kPi = std::numbers::pi;

double sech(double z) { return 1.0 / std::cosh(z); }

}  // namespace

NonlinearitySpec sine_gordon() {
  NonlinearitySpec nl;
  nl.name = "sine_gordon";
  nl.f = [](double u) { return -std::sin(2.0 * kPi * u) / (2.0 * kPi); };
  nl.f_prime = [](double u) { return -std::cos(2.0 * kPi * u); };
  nl.f_double_prime = [](double u) { return 2.0 * kPi * std::sin(2.0 * kPi * u); };
  nl.potential = [](double u) {
    return (std::cos(2.0 * kPi * u) - 1.0) / (4.0 * kPi * kPi);
  };
  nl.exact_kink = [](double z) { return (2.0 / kPi) * std::atan(std::exp(z)); };
  nl.exact_kink_derivative = [](double z) { return sech(z) / kPi; };
  nl.odd_symmetric = true;
  return nl;
}

NonlinearitySpec phi4() {
  NonlinearitySpec nl;
  nl.name = "phi4";
  nl.f = [](double u) {
    const double w = 2.0 * u - 1.0;
    return w - w * w * w;
  };
  nl.f_prime = [](double u) {
    const double w = 2.0 * u - 1.0;
    return 2.0 - 6.0 * w * w;
  };
  nl.f_double_prime = [](double u) { return -24.0 * (2.0 * u - 1.0); };
  nl.potential = [](double u) {
    const double w = 2.0 * u - 1.0;
    const double q = 1.0 - w * w;
    return -q * q / 8.0;
  };
  nl.exact_kink = [](double z) { return 0.5 * (1.0 + std::tanh(z)); };
  nl.exact_kink_derivative = [](double z) {
    const double s = sech(z);
    return 0.5 * s * s;
  };
  nl.odd_symmetric = true;
  return nl;
}

NonlinearitySpec nonlinearity_by_name(const std::string& name) {
  if (name == "sine_gordon") return sine_gordon();
  if (name == "phi4") return phi4();
  throw ConfigError("unknown nonlinearity '" + name +
                    "' (builtins: sine_gordon, phi4)");
}

ScalarMap make_potential_by_quadrature(ScalarMap f) {
  return [f = std::move(f)](double u) {
    if (u == 0.0) return 0.0;
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 15>::integrate(f, 0.0, u, 12, 1e-13);
  };
}

NonlinearitySpec scaled(const NonlinearitySpec& nl, double factor) {
  NonlinearitySpec out = nl;
  out.f = [f = nl.f, factor](double u) { return factor * f(u); };
  out.f_prime = [g = nl.f_prime, factor](double u) { return factor * g(u); };
  out.f_double_prime = [g = nl.f_double_prime, factor](double u) {
    return factor * g(u);
  };
  out.potential = [g = nl.potential, factor](double u) { return factor * g(u); };
  return out;
}

namespace {

void add_clause(ValidationReport& r, const std::string& name, bool passed,
                double measured, const std::string& detail = {}) {
  r.clauses.push_back({name, passed, measured, detail});
}

// 4th-order central second difference of a closed-form profile.
double second_derivative_fd(const ScalarMap& u, double z) {
  const double d = 1e-2;
  return (-u(z - 2 * d) + 16.0 * u(z - d) - 30.0 * u(z) + 16.0 * u(z + d) -
          u(z + 2 * d)) /
         (12.0 * d * d);
}

}  // namespace

ValidationReport validate_h1(const NonlinearitySpec& nl, int sample_count) {
  if (sample_count < 3) throw ConfigError("validate_h1 needs sample_count >= 3");
  ValidationReport report;
  report.subject = nl.name;

  const double f0 = nl.f(0.0);
  const double f1 = nl.f(1.0);
  add_clause(report, "f(0) = 0", std::abs(f0) <= 1e-12, f0);
  add_clause(report, "f(1) = 0", std::abs(f1) <= 1e-12, f1);

  const double fp0 = nl.f_prime(0.0);
  const double fp1 = nl.f_prime(1.0);
  add_clause(report, "f'(0) < 0", fp0 < 0.0, fp0);
  add_clause(report, "f'(1) < 0", fp1 < 0.0, fp1);

  const double F1 = nl.potential(1.0);
  add_clause(report, "F(1) = 0", std::abs(F1) <= 1e-9, F1);

  // Interior nonvanishing: equispaced samples plus the midpoint. A zero or a
  // sign change between consecutive samples fails; denser behavior between
  // samples is the caller's responsibility.
  {
    std::vector<double> points;
    for (int i = 1; i <= sample_count; ++i)
      points.push_back(static_cast<double>(i) / (sample_count + 1));
    points.push_back(0.5);
    bool ok = true;
    double worst = nl.potential(points.front());
    int prev_sign = 0;
    for (double u : points) {
      const double val = nl.potential(u);
      if (std::abs(val) < std::abs(worst)) worst = val;
      if (std::abs(val) <= 1e-12) ok = false;
      const int sign = val > 0 ? 1 : -1;
      if (prev_sign != 0 && sign != prev_sign) ok = false;
      prev_sign = sign;
    }
    std::ostringstream detail;
    detail << "sampled " << points.size() << " interior points";
    add_clause(report, "F != 0 on (0,1)", ok, worst, detail.str());
  }

  // Potential consistency against direct quadrature of f.
  {
    const ScalarMap quad = make_potential_by_quadrature(nl.f);
    double worst = 0.0;
    for (int i = 1; i <= 8; ++i) {
      const double u = static_cast<double>(i) / 9.0;
      worst = std::max(worst, std::abs(nl.potential(u) - quad(u)));
    }
    add_clause(report, "F matches quadrature of f", worst <= 1e-9, worst);
  }

  if (nl.exact_kink) {
    const ScalarMap& u0 = *nl.exact_kink;
    const double far = 60.0;
    add_clause(report, "u0(-inf) = 0", std::abs(u0(-far)) <= 1e-10, u0(-far));
    add_clause(report, "u0(+inf) = 1", std::abs(u0(far) - 1.0) <= 1e-10, u0(far));

    // Scanned on a central window: in the far tails the closed forms
    // saturate to exactly 0 or 1 in double precision.
    bool monotone = true;
    bool in_range = true;
    double prev = u0(-15.0);
    for (int i = 1; i <= 300; ++i) {
      const double z = -15.0 + i * 0.1;
      const double val = u0(z);
      if (val <= prev) monotone = false;
      if (val <= 0.0 || val >= 1.0) in_range = false;
      prev = val;
    }
    add_clause(report, "u0 strictly increasing", monotone, 0.0);
    add_clause(report, "u0 in (0,1)", in_range, 0.0);

    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double z = -8.0 + i * 0.2;
      worst = std::max(worst,
                       std::abs(second_derivative_fd(u0, z) + nl.f(u0(z))));
    }
    add_clause(report, "u0'' + f(u0) = 0", worst <= 1e-6, worst,
               "4th-order finite differences at step 1e-2");

    if (nl.exact_kink_derivative) {
      const ScalarMap& du0 = *nl.exact_kink_derivative;
      double dworst = 0.0;
      for (int i = 0; i <= 80; ++i) {
        const double z = -8.0 + i * 0.2;
        const double d = 1e-3;
        const double fd =
            (u0(z - 2 * d) - 8.0 * u0(z - d) + 8.0 * u0(z + d) - u0(z + 2 * d)) /
            (12.0 * d);
        dworst = std::max(dworst, std::abs(fd - du0(z)));
      }
      add_clause(report, "u0' matches finite differences", dworst <= 1e-8, dworst);
    }
  }

  return report;
}

}  // namespace kinklab
