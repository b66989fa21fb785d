#include "kinklab/lattice.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "kinklab/compute.hpp"
#include "kinklab/errors.hpp"
#include "kinklab/fit.hpp"

namespace kinklab {

namespace {

std::vector<double> acceleration(const LatticeState& s) {
  std::vector<double> acc(s.u.size());
  compute::lattice_accel(s.u, s.left_clamp, s.right_clamp,
                         s.kernel.coefficients(), s.kappa, s.nl.f, acc);
  return acc;
}

}  // namespace

InitFromKinkResult init_from_kink(const KinkSolution& kink,
                                  const NonlinearitySpec& nl,
                                  const KernelSpec& kernel, double c,
                                  double offset, int n_min, int n_max) {
  if (n_min >= n_max) throw ConfigError("lattice site range is empty");
  if (c == 0.0) throw ConfigError("wave speed c must be nonzero");

  InitFromKinkResult out;
  LatticeState& s = out.state;
  s.n_min = n_min;
  s.n_max = n_max;
  s.kappa = kink.epsilon * c * c;
  s.kernel = kernel;
  s.nl = (c == 1.0) ? nl : scaled(nl, c * c);
  s.left_clamp = 0.0;
  s.right_clamp = 1.0;
  s.wave_speed = c;
  s.offset = offset;
  s.reference_profile = std::make_shared<GridFunction>(kink.u);

  const GridFunction du = kink.u.derivative();
  const double L = kink.u.grid().half_width();
  s.u.resize(static_cast<std::size_t>(s.site_count()));
  s.p.resize(static_cast<std::size_t>(s.site_count()));
  for (int n = n_min; n <= n_max; ++n) {
    const double z = static_cast<double>(n) - offset;
    const std::size_t i = static_cast<std::size_t>(n - n_min);
    s.u[i] = interpolate_cubic(kink.u, z);
    s.p[i] = -c * interpolate_cubic(du, z);
  }
  out.support_warning =
      (static_cast<double>(n_min) - offset < -L) ||
      (static_cast<double>(n_max) - offset > L);
  return out;
}

void step(LatticeState& s, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const std::size_t n = s.u.size();
  const std::vector<double> a1 = acceleration(s);
  // Half-kick, drift, half-kick.
  for (std::size_t i = 0; i < n; ++i) s.p[i] += 0.5 * dt * a1[i];
  for (std::size_t i = 0; i < n; ++i) s.u[i] += dt * s.p[i];
  const std::vector<double> a2 = acceleration(s);
  for (std::size_t i = 0; i < n; ++i) s.p[i] += 0.5 * dt * a2[i];
  s.t += dt;
}

EnergyReport energy(const LatticeState& s) {
  EnergyReport e;
  for (double p : s.p) e.kinetic += 0.5 * p * p;
  for (double u : s.u) e.potential += s.nl.potential(u);

  // Pair terms over a window extended by k_max so every inner site sees all
  // of its neighbors, including the clamped ones. Outer-site terms that
  // involve no inner site are constants and are dropped.
  const int kmax = s.kernel.k_max();
  for (int n = s.n_min - kmax; n <= s.n_max + kmax; ++n) {
    const double un = s.site_value(n);
    for (int k = -kmax; k <= kmax; ++k) {
      if (k == 0) continue;
      const bool inner_n = (n >= s.n_min && n <= s.n_max);
      const bool inner_m = (n - k >= s.n_min && n - k <= s.n_max);
      if (!inner_n && !inner_m) continue;
      const double d = s.site_value(n - k) - un;
      e.interaction += 0.25 * s.kappa * s.kernel.coefficient(k) * d * d;
    }
  }
  e.total = e.kinetic + e.interaction + e.potential;
  return e;
}

double front_position(const LatticeState& s) {
  for (int n = s.n_min; n < s.n_max; ++n) {
    const double a = s.site_value(n) - 0.5;
    const double b = s.site_value(n + 1) - 0.5;
    if (a == 0.0) return n;
    if (a * b < 0.0)
      return static_cast<double>(n) + a / (a - b);
  }
  if (s.site_value(s.n_max) == 0.5) return s.n_max;
  throw NoFrontError("no 1/2-crossing in the site range");
}

namespace {

double front_or_nan(const LatticeState& s) {
  try {
    return front_position(s);
  } catch (const NoFrontError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

SimulationResult run_traveling_wave(LatticeState& s, double T, double dt) {
  if (s.reference_profile == nullptr)
    throw ConfigError("state carries no reference profile; build it with "
                      "init_from_kink");
  const int nsteps = static_cast<int>(std::llround(T / dt));
  SimulationResult out;
  out.telemetry.reserve(static_cast<std::size_t>(nsteps) + 1);

  const double e0 = energy(s).total;
  const double e_scale = std::max(std::abs(e0), 1e-12);
  out.telemetry.push_back({s.t, front_or_nan(s), e0});
  double max_drift = 0.0;
  bool energy_finite = std::isfinite(e0);
  for (int k = 0; k < nsteps; ++k) {
    step(s, dt);
    const double e = energy(s).total;
    energy_finite = energy_finite && std::isfinite(e);
    max_drift = std::max(max_drift, std::abs(e - e0));
    const double front = front_or_nan(s);
    if (!out.front_lost && !std::isfinite(front)) {
      out.front_lost = true;
      out.front_lost_time = s.t;
    }
    out.telemetry.push_back({s.t, front, e});
  }
  out.energy_drift = energy_finite
                         ? max_drift / e_scale
                         : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> ts, fronts;
  ts.reserve(out.telemetry.size());
  fronts.reserve(out.telemetry.size());
  for (const auto& row : out.telemetry) {
    if (!std::isfinite(row[1])) continue;
    ts.push_back(row[0]);
    fronts.push_back(row[1]);
  }
  if (ts.size() >= 2) {
    const LineFit fit = fit_line(ts, fronts);
    out.speed = fit.slope;
    out.speed_r2 = fit.r2;
  } else {
    out.speed = std::numeric_limits<double>::quiet_NaN();
    out.speed_r2 = 0.0;
  }

  const GridFunction& ref = *s.reference_profile;
  const double shift = s.offset + s.wave_speed * s.t;
  double werr = 0.0;
  for (int n = s.n_min; n <= s.n_max; ++n) {
    const double got = s.u[static_cast<std::size_t>(n - s.n_min)];
    if (!std::isfinite(got)) {
      werr = std::numeric_limits<double>::quiet_NaN();
      break;
    }
    const double expected = interpolate_cubic(ref, static_cast<double>(n) - shift);
    werr = std::max(werr, std::abs(got - expected));
  }
  out.waveform_error = werr;
  return out;
}

}  // namespace kinklab
