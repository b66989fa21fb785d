#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kinklab/fit.hpp"
#include "kinklab/grid.hpp"
#include "kinklab/kernel.hpp"
#include "kinklab/kink_solver.hpp"
#include "kinklab/lattice.hpp"
#include "kinklab/nonlinearity.hpp"
#include "kinklab/validation.hpp"

namespace kinklab {

inline constexpr int kReportSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Configuration. One JSON document drives every subcommand; sections that a
// subcommand does not use are ignored. Reports echo the configuration and
// contain no timestamps, so identical configs give byte-identical output.
// ---------------------------------------------------------------------------

struct KernelConfig {
  std::string type = "nearest_neighbor";  // nearest_neighbor|exponential|custom
  double decay = 0.5;
  int k_max = 40;
  double tail_tol = 1e-6;
  std::vector<double> coefficients;  // custom only: {a_0, a_1, ...}

  KernelSpec build() const;
  nlohmann::json to_json() const;
  static KernelConfig from_json(const nlohmann::json& j);
};

struct GridConfig {
  double half_width = 20.0;
  int subdivisions = 100;

  Grid build() const { return Grid(half_width, subdivisions); }
  nlohmann::json to_json() const;
  static GridConfig from_json(const nlohmann::json& j);
};

struct SolverConfig {
  int max_iterations = 200;
  double step_tolerance = 1e-12;
  std::optional<double> ball_radius;
  std::string mode = "projected";  // projected|symmetric

  SolverOptions build(double epsilon) const;
  nlohmann::json to_json() const;
  static SolverConfig from_json(const nlohmann::json& j);
};

struct SimConfig {
  double c = 1.0;
  double T = 50.0;
  double dt = 0.01;
  double offset = 0.0;
  std::optional<int> site_min;  // auto-sized when absent
  std::optional<int> site_max;

  nlohmann::json to_json() const;
  static SimConfig from_json(const nlohmann::json& j);
};

struct RunConfig {
  std::string model = "phi4";
  KernelConfig kernel;
  GridConfig grid;
  std::vector<double> epsilons = {0.0125, 0.025, 0.05, 0.1};
  SolverConfig solver;
  SimConfig sim;

  double lead_epsilon() const;  // first entry; solve/simulate use it
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool reliable = false;  // r2 >= 0.98 and >= 3 points

  nlohmann::json to_json() const;
};

/// Log-log slope over the rows that carry valid (positive) values.
std::optional<SlopeFit> fit_slope(const std::vector<double>& x,
                                  const std::vector<double>& y);

struct SolveReport {
  RunConfig config;
  KinkSolution solution;

  nlohmann::json to_json() const;
};

SolveReport run_solve(const NonlinearitySpec& nl, const KernelSpec& kernel,
                      const RunConfig& cfg);

struct SweepRow {
  double epsilon = 0.0;
  bool ok = false;
  std::string error;
  double h2_distance = 0.0;
  double multiplier_abs = 0.0;
  double lambda1 = 0.0;
  double g_l2 = 0.0;
  int iterations = 0;
};

struct SweepReport {
  RunConfig config;
  double lambda1_floor = 0.0;  // principal eigenvalue at zero coupling
  std::vector<SweepRow> rows;
  std::map<std::string, SlopeFit> fitted_slopes;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

/// Solves the kink, the near-zero eigenvalue and the corrected-profile
/// residual for every coupling in the config, then fits the scaling laws.
/// Per-coupling failures are recorded in their row; the sweep continues.
SweepReport run_sweep(const NonlinearitySpec& nl, const KernelSpec& kernel,
                      const RunConfig& cfg);

struct RefineRow {
  int m = 0;
  double h = 0.0;
  bool ok = false;
  std::string error;
  double multiplier_abs = 0.0;
  double lemma1_pairing = 0.0;
  double lambda1_zero_abs = 0.0;
};

struct RefineReport {
  RunConfig config;
  double epsilon = 0.0;
  std::vector<RefineRow> rows;
  std::map<std::string, SlopeFit> fitted_slopes;  // vs h

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

/// Grid-refinement study at fixed coupling: the multiplier, the pairing of
/// the shift-operator lemma and the zero-coupling eigenvalue floor against h.
RefineReport run_refine(const NonlinearitySpec& nl, const KernelSpec& kernel,
                        const RunConfig& cfg, const std::vector<int>& m_list);

struct LsRow {
  double epsilon = 0.0;
  bool ok = false;
  std::string error;
  double lambda1 = 0.0;
  double g_l2 = 0.0;
  double vstar_h2 = 0.0;
  double gap = 0.0;
  double alignment = 0.0;  // H2 distance of the eigenfunction from u0'/||u0'||
  int eigen_iterations = 0;
  int vstar_iterations = 0;
};

struct LsReport {
  RunConfig config;
  double d_estimate = 0.0;  // linear eigenvalue drift; vanishes in theory
  double lambda1_floor = 0.0;
  std::vector<LsRow> rows;
  std::map<std::string, SlopeFit> fitted_slopes;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

LsReport run_ls_diagnostics(const NonlinearitySpec& nl, const KernelSpec& kernel,
                            const RunConfig& cfg);

struct SimulateReport {
  RunConfig config;
  double epsilon = 0.0;
  double kappa = 0.0;
  int site_min = 0;
  int site_max = 0;
  bool support_warning = false;
  bool margin_warning = false;
  SimulationResult result;
  double front_initial = 0.0;
  double front_final = 0.0;

  nlohmann::json to_json() const;  // scalars only; telemetry goes to CSV
  void write_telemetry_csv(std::ostream& os) const;
};

/// Solves the kink at the lead coupling and drives the chain with it.
SimulateReport run_simulation(const NonlinearitySpec& nl,
                              const KernelSpec& kernel, const RunConfig& cfg);

/// Same, reusing an already computed kink (e.g. loaded from a solve report).
SimulateReport run_simulation_from(const KinkSolution& kink,
                                   const NonlinearitySpec& nl,
                                   const KernelSpec& kernel,
                                   const RunConfig& cfg);

struct ValidateReport {
  RunConfig config;
  ValidationReport h1;
  ValidationReport h2;

  bool passed() const { return h1.passed() && h2.passed(); }
  nlohmann::json to_json() const;
};

ValidateReport run_validate(const NonlinearitySpec& nl, const KernelSpec& kernel,
                            const RunConfig& cfg);

/// Rebuilds a solution from a solve report (grid, limits and scalars).
KinkSolution kink_from_report(const nlohmann::json& report);

nlohmann::json to_json(const ValidationReport& report);

}  // namespace kinklab
