#pragma once

#include <functional>
#include <optional>
#include <string>

#include "kinklab/validation.hpp"

namespace kinklab {

using ScalarMap = std::function<double(double)>;

/// Reaction term of the traveling-wave equation together with its
/// derivatives, its potential, and (when available in closed form) the
/// uncoupled-limit kink profile connecting the equilibria 0 and 1.
///
/// Immutable after construction; safe for concurrent read-only use.
struct NonlinearitySpec {
  std::string name;
  ScalarMap f;
  ScalarMap f_prime;
  ScalarMap f_double_prime;
  /// Potential F(u) = integral of f from 0 to u. Builtins supply closed
  /// forms; make_potential_by_quadrature provides a default for custom f.
  ScalarMap potential;
  std::optional<ScalarMap> exact_kink;
  std::optional<ScalarMap> exact_kink_derivative;
  /// True iff f(u + 1/2) is odd; enables the symmetric solver mode.
  bool odd_symmetric = false;

  bool has_exact_kink() const {
    return exact_kink.has_value() && exact_kink_derivative.has_value();
  }
};

/// The pendulum-chain reaction term mapped to equilibria {0, 1}:
/// f(u) = -sin(2*pi*u)/(2*pi), kink u0(z) = (2/pi)*atan(exp(z)).
NonlinearitySpec sine_gordon();

/// The double-well reaction term mapped to equilibria {0, 1}:
/// f(u) = (2u-1) - (2u-1)^3, kink u0(z) = (1 + tanh z)/2.
NonlinearitySpec phi4();

/// Builtin lookup for CLI/config ("sine_gordon", "phi4").
NonlinearitySpec nonlinearity_by_name(const std::string& name);

/// Adaptive quadrature of f from 0; default potential for user-supplied f.
ScalarMap make_potential_by_quadrature(ScalarMap f);

/// Rescale the reaction term by `factor` (f, F and derivatives scale; the
/// kink profile is unchanged). Used by the wave-speed reduction.
NonlinearitySpec scaled(const NonlinearitySpec& nl, double factor);

/// Checks the standing hypotheses on f: roots at 0 and 1, stable roots
/// (f'(0), f'(1) < 0), F(1) = 0 and F nonvanishing on (0,1) at
/// sample_count equispaced interior points plus the midpoint. When an exact
/// kink is attached, also checks its limits, monotonicity and the pointwise
/// equation residual.
ValidationReport validate_h1(const NonlinearitySpec& nl, int sample_count);

}  // namespace kinklab
