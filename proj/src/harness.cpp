#include "kinklab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "kinklab/errors.hpp"
#include "kinklab/lyapunov_schmidt.hpp"

namespace kinklab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

KernelSpec KernelConfig::build() const {
  if (type == "nearest_neighbor") return KernelSpec::nearest_neighbor();
  if (type == "exponential") return KernelSpec::exponential(decay, k_max, tail_tol);
  if (type == "custom") {
    if (coefficients.empty())
      throw ConfigError("custom kernel needs a coefficients array");
    return KernelSpec::custom(coefficients);
  }
  throw ConfigError("unknown kernel type '" + type + "'");
}

json KernelConfig::to_json() const {
  json j{{"type", type}};
  if (type == "exponential") {
    j["decay"] = decay;
    j["k_max"] = k_max;
    j["tail_tol"] = tail_tol;
  } else if (type == "custom") {
    j["coefficients"] = coefficients;
  }
  return j;
}

KernelConfig KernelConfig::from_json(const json& j) {
  KernelConfig c;
  c.type = j.value("type", c.type);
  c.decay = j.value("decay", c.decay);
  c.k_max = j.value("k_max", c.k_max);
  c.tail_tol = j.value("tail_tol", c.tail_tol);
  if (j.contains("coefficients"))
    c.coefficients = j.at("coefficients").get<std::vector<double>>();
  return c;
}

json GridConfig::to_json() const {
  return json{{"half_width", half_width}, {"subdivisions", subdivisions}};
}

GridConfig GridConfig::from_json(const json& j) {
  GridConfig c;
  c.half_width = j.value("half_width", c.half_width);
  c.subdivisions = j.value("subdivisions", c.subdivisions);
  return c;
}

SolverOptions SolverConfig::build(double epsilon) const {
  SolverOptions o;
  o.epsilon = epsilon;
  o.max_iterations = max_iterations;
  o.step_tolerance = step_tolerance;
  o.ball_radius = ball_radius;
  if (mode == "projected") {
    o.mode = SolverMode::Projected;
  } else if (mode == "symmetric") {
    o.mode = SolverMode::Symmetric;
  } else {
    throw ConfigError("unknown solver mode '" + mode + "'");
  }
  return o;
}

json SolverConfig::to_json() const {
  json j{{"max_iterations", max_iterations},
         {"step_tolerance", step_tolerance},
         {"mode", mode}};
  j["ball_radius"] = ball_radius ? json(*ball_radius) : json(nullptr);
  return j;
}

SolverConfig SolverConfig::from_json(const json& j) {
  SolverConfig c;
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.step_tolerance = j.value("step_tolerance", c.step_tolerance);
  c.mode = j.value("mode", c.mode);
  if (j.contains("ball_radius") && !j.at("ball_radius").is_null())
    c.ball_radius = j.at("ball_radius").get<double>();
  return c;
}

json SimConfig::to_json() const {
  json j{{"c", c}, {"T", T}, {"dt", dt}, {"offset", offset}};
  j["site_min"] = site_min ? json(*site_min) : json(nullptr);
  j["site_max"] = site_max ? json(*site_max) : json(nullptr);
  return j;
}

SimConfig SimConfig::from_json(const json& j) {
  SimConfig c;
  c.c = j.value("c", c.c);
  c.T = j.value("T", c.T);
  c.dt = j.value("dt", c.dt);
  c.offset = j.value("offset", c.offset);
  if (j.contains("site_min") && !j.at("site_min").is_null())
    c.site_min = j.at("site_min").get<int>();
  if (j.contains("site_max") && !j.at("site_max").is_null())
    c.site_max = j.at("site_max").get<int>();
  return c;
}

double RunConfig::lead_epsilon() const {
  if (epsilons.empty()) throw EmptySweepError("no coupling values configured");
  return epsilons.front();
}

json RunConfig::to_json() const {
  return json{{"model", model},         {"kernel", kernel.to_json()},
              {"grid", grid.to_json()}, {"epsilons", epsilons},
              {"solver", solver.to_json()}, {"sim", sim.to_json()}};
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.model = j.value("model", c.model);
  if (j.contains("kernel")) c.kernel = KernelConfig::from_json(j.at("kernel"));
  if (j.contains("grid")) c.grid = GridConfig::from_json(j.at("grid"));
  if (j.contains("epsilons"))
    c.epsilons = j.at("epsilons").get<std::vector<double>>();
  if (j.contains("solver")) c.solver = SolverConfig::from_json(j.at("solver"));
  if (j.contains("sim")) c.sim = SimConfig::from_json(j.at("sim"));
  return c;
}

// ---------------------------------------------------------------------------
// Fits and small serializers
// ---------------------------------------------------------------------------

json SlopeFit::to_json() const {
  return json{{"slope", slope},
              {"intercept", intercept},
              {"r2", r2},
              {"reliable", reliable}};
}

std::optional<SlopeFit> fit_slope(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      fx.push_back(x[i]);
      fy.push_back(y[i]);
    }
  }
  if (fx.size() < 3) return std::nullopt;
  const LineFit f = fit_loglog(fx, fy);
  return SlopeFit{f.slope, f.intercept, f.r2, f.r2 >= 0.98};
}

json to_json(const ValidationReport& report) {
  json clauses = json::array();
  for (const auto& c : report.clauses)
    clauses.push_back(json{{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"detail", c.detail}});
  return json{{"subject", report.subject},
              {"passed", report.passed()},
              {"clauses", clauses}};
}

namespace {

json fits_to_json(const std::map<std::string, SlopeFit>& fits) {
  json j = json::object();
  for (const auto& [name, fit] : fits) j[name] = fit.to_json();
  return j;
}

json report_header(const char* command, const RunConfig& cfg) {
  json j = cfg.to_json();
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

SolveReport run_solve(const NonlinearitySpec& nl, const KernelSpec& kernel,
                      const RunConfig& cfg) {
  const Grid grid = cfg.grid.build();
  KinkSolver solver(nl, kernel, grid);
  return SolveReport{cfg, solver.solve(cfg.solver.build(cfg.lead_epsilon()))};
}

json SolveReport::to_json() const {
  json j = report_header("solve", config);
  j["epsilon"] = solution.epsilon;
  j["iterations"] = solution.iterations;
  j["multiplier"] = solution.multiplier;
  j["equation_residual"] = solution.equation_residual;
  j["phi_h2"] = solution.phi.norm(NormKind::H2);
  j["step_history"] = solution.step_history;
  j["u"] = solution.u.values();
  j["phi"] = solution.phi.values();
  return j;
}

KinkSolution kink_from_report(const json& report) {
  const Grid grid = GridConfig::from_json(report.at("grid")).build();
  const auto u_values = report.at("u").get<std::vector<double>>();
  const auto phi_values = report.at("phi").get<std::vector<double>>();
  if (static_cast<int>(u_values.size()) != grid.point_count() ||
      static_cast<int>(phi_values.size()) != grid.point_count())
    throw ConfigError("solve report profile length does not match its grid");
  GridFunction u(grid, 0.0, 1.0);
  GridFunction phi(grid, 0.0, 0.0);
  u.values() = u_values;
  phi.values() = phi_values;
  const std::string mode = report.value("mode", std::string("projected"));
  KinkSolution sol{std::move(u),
                   std::move(phi),
                   report.value("multiplier", 0.0),
                   report.value("iterations", 0),
                   report.value("step_history", std::vector<double>{}),
                   report.value("equation_residual", 0.0),
                   report.at("epsilon").get<double>(),
                   mode == "symmetric" ? SolverMode::Symmetric
                                       : SolverMode::Projected};
  return sol;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

SweepReport run_sweep(const NonlinearitySpec& nl, const KernelSpec& kernel,
                      const RunConfig& cfg) {
  if (cfg.epsilons.empty())
    throw EmptySweepError("sweep requires at least one coupling value");
  const Grid grid = cfg.grid.build();
  const KinkSolver solver(nl, kernel, grid);
  const ReductionAnalysis analysis(nl, kernel, grid);

  SweepReport report;
  report.config = cfg;
  report.lambda1_floor = analysis.principal_eigenpair(0.0).lambda;

  std::vector<double> epsilons = cfg.epsilons;
  std::sort(epsilons.begin(), epsilons.end());
  for (double eps : epsilons) {
    SweepRow row;
    row.epsilon = eps;
    try {
      const KinkSolution sol = solver.solve(cfg.solver.build(eps));
      row.h2_distance = sol.phi.norm(NormKind::H2);
      row.multiplier_abs = std::abs(sol.multiplier);
      row.iterations = sol.iterations;
      row.lambda1 = analysis.principal_eigenpair(eps).lambda;
      row.g_l2 = analysis.correction_residual(eps).norm(NormKind::L2);
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<double> xs, h2s, gs, l1s;
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    xs.push_back(row.epsilon);
    h2s.push_back(row.h2_distance);
    gs.push_back(row.g_l2);
    l1s.push_back(std::abs(row.lambda1 - report.lambda1_floor));
  }
  if (auto f = fit_slope(xs, h2s)) report.fitted_slopes["h2_distance"] = *f;
  if (auto f = fit_slope(xs, gs)) report.fitted_slopes["g_l2"] = *f;
  if (auto f = fit_slope(xs, l1s))
    report.fitted_slopes["lambda1_floor_corrected"] = *f;
  return report;
}

json SweepReport::to_json() const {
  json j = report_header("sweep", config);
  j["lambda1_floor"] = lambda1_floor;
  json rows_json = json::array();
  for (const auto& row : rows)
    rows_json.push_back(json{{"epsilon", row.epsilon},
                             {"ok", row.ok},
                             {"error", row.error},
                             {"h2_distance", row.h2_distance},
                             {"multiplier_abs", row.multiplier_abs},
                             {"lambda1", row.lambda1},
                             {"g_l2", row.g_l2},
                             {"iterations", row.iterations}});
  j["rows"] = rows_json;
  j["fitted_slopes"] = fits_to_json(fitted_slopes);
  return j;
}

void SweepReport::write_csv(std::ostream& os) const {
  os.precision(17);
  os << "epsilon,h2_distance,multiplier_abs,lambda1,g_l2,iterations\n";
  for (const auto& row : rows)
    os << row.epsilon << ',' << row.h2_distance << ',' << row.multiplier_abs
       << ',' << row.lambda1 << ',' << row.g_l2 << ',' << row.iterations << '\n';
}

// ---------------------------------------------------------------------------
// refine
// ---------------------------------------------------------------------------

RefineReport run_refine(const NonlinearitySpec& nl, const KernelSpec& kernel,
                        const RunConfig& cfg, const std::vector<int>& m_list) {
  if (m_list.size() < 3)
    throw ConfigError("refinement study needs at least 3 subdivision counts");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw ConfigError("subdivision counts must be strictly increasing");

  RefineReport report;
  report.config = cfg;
  report.epsilon = cfg.lead_epsilon();

  for (int m : m_list) {
    RefineRow row;
    row.m = m;
    row.h = 1.0 / m;
    try {
      const Grid grid(cfg.grid.half_width, m);
      const KinkSolver solver(nl, kernel, grid);
      const KinkSolution sol = solver.solve(cfg.solver.build(report.epsilon));
      row.multiplier_abs = std::abs(sol.multiplier);
      row.lemma1_pairing = check_lemma1(kernel, solver.baseline()).pairing;
      const ReductionAnalysis analysis(nl, kernel, grid);
      row.lambda1_zero_abs = std::abs(analysis.principal_eigenpair(0.0).lambda);
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<double> hs, bs, floors;
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    hs.push_back(row.h);
    bs.push_back(row.multiplier_abs);
    floors.push_back(row.lambda1_zero_abs);
  }
  if (auto f = fit_slope(hs, bs)) report.fitted_slopes["multiplier_abs_vs_h"] = *f;
  if (auto f = fit_slope(hs, floors))
    report.fitted_slopes["lambda1_zero_vs_h"] = *f;
  return report;
}

json RefineReport::to_json() const {
  json j = report_header("refine", config);
  j["epsilon"] = epsilon;
  json rows_json = json::array();
  for (const auto& row : rows)
    rows_json.push_back(json{{"m", row.m},
                             {"h", row.h},
                             {"ok", row.ok},
                             {"error", row.error},
                             {"multiplier_abs", row.multiplier_abs},
                             {"lemma1_pairing", row.lemma1_pairing},
                             {"lambda1_zero_abs", row.lambda1_zero_abs}});
  j["rows"] = rows_json;
  j["fitted_slopes"] = fits_to_json(fitted_slopes);
  return j;
}

void RefineReport::write_csv(std::ostream& os) const {
  os.precision(17);
  os << "m,h,multiplier_abs,lemma1_pairing,lambda1_zero_abs\n";
  for (const auto& row : rows)
    os << row.m << ',' << row.h << ',' << row.multiplier_abs << ','
       << row.lemma1_pairing << ',' << row.lambda1_zero_abs << '\n';
}

// ---------------------------------------------------------------------------
// ls-diagnostics
// ---------------------------------------------------------------------------

LsReport run_ls_diagnostics(const NonlinearitySpec& nl, const KernelSpec& kernel,
                            const RunConfig& cfg) {
  if (cfg.epsilons.empty())
    throw EmptySweepError("diagnostics require at least one coupling value");
  const Grid grid = cfg.grid.build();
  const ReductionAnalysis analysis(nl, kernel, grid);

  LsReport report;
  report.config = cfg;
  report.d_estimate = analysis.eigenvalue_slope_estimate();
  report.lambda1_floor = analysis.principal_eigenpair(0.0).lambda;

  GridFunction mode_limit = analysis.baseline_derivative();
  mode_limit *= 1.0 / mode_limit.norm(NormKind::H2);

  std::vector<double> epsilons = cfg.epsilons;
  std::sort(epsilons.begin(), epsilons.end());
  for (double eps : epsilons) {
    LsRow row;
    row.epsilon = eps;
    try {
      const SpectralDiagnostics sd = analysis.spectral_diagnostics(eps);
      row.lambda1 = sd.principal.lambda;
      row.gap = sd.gap;
      row.eigen_iterations = sd.principal.iterations;
      row.alignment = (sd.principal.mode - mode_limit).norm(NormKind::H2);
      row.g_l2 = analysis.correction_residual(eps).norm(NormKind::L2);
      const BifurcationSection section(analysis, eps, sd.principal);
      const auto comp = section.complement(0.0);
      row.vstar_h2 = comp.v.norm(NormKind::H2);
      row.vstar_iterations = comp.iterations;
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  std::vector<double> xs, l1s, vs, als;
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    xs.push_back(row.epsilon);
    l1s.push_back(std::abs(row.lambda1 - report.lambda1_floor));
    vs.push_back(row.vstar_h2);
    als.push_back(row.alignment);
  }
  if (auto f = fit_slope(xs, l1s))
    report.fitted_slopes["lambda1_floor_corrected"] = *f;
  if (auto f = fit_slope(xs, vs)) report.fitted_slopes["vstar_h2"] = *f;
  if (auto f = fit_slope(xs, als)) report.fitted_slopes["alignment"] = *f;
  return report;
}

json LsReport::to_json() const {
  json j = report_header("ls_diagnostics", config);
  j["d_estimate"] = d_estimate;
  j["lambda1_floor"] = lambda1_floor;
  json rows_json = json::array();
  for (const auto& row : rows)
    rows_json.push_back(json{{"epsilon", row.epsilon},
                             {"ok", row.ok},
                             {"error", row.error},
                             {"lambda1", row.lambda1},
                             {"g_l2", row.g_l2},
                             {"vstar_h2", row.vstar_h2},
                             {"gap", row.gap},
                             {"alignment", row.alignment},
                             {"eigen_iterations", row.eigen_iterations},
                             {"vstar_iterations", row.vstar_iterations}});
  j["rows"] = rows_json;
  j["fitted_slopes"] = fits_to_json(fitted_slopes);
  return j;
}

void LsReport::write_csv(std::ostream& os) const {
  os.precision(17);
  os << "epsilon,lambda1,g_l2,vstar_h2,gap,alignment\n";
  for (const auto& row : rows)
    os << row.epsilon << ',' << row.lambda1 << ',' << row.g_l2 << ','
       << row.vstar_h2 << ',' << row.gap << ',' << row.alignment << '\n';
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

SimulateReport run_simulation(const NonlinearitySpec& nl,
                              const KernelSpec& kernel, const RunConfig& cfg) {
  const Grid grid = cfg.grid.build();
  const KinkSolution sol =
      KinkSolver(nl, kernel, grid).solve(cfg.solver.build(cfg.lead_epsilon()));
  return run_simulation_from(sol, nl, kernel, cfg);
}

SimulateReport run_simulation_from(const KinkSolution& kink,
                                   const NonlinearitySpec& nl,
                                   const KernelSpec& kernel,
                                   const RunConfig& cfg) {
  const SimConfig& sim = cfg.sim;
  const double L = kink.u.grid().half_width();
  const int kmax = kernel.k_max();
  const double travel = sim.c * sim.T;

  int n_min, n_max;
  if (sim.site_min && sim.site_max) {
    n_min = *sim.site_min;
    n_max = *sim.site_max;
  } else {
    // Wide enough that the front keeps a k_max + 5 margin from both ends
    // for the whole run, plus the kink width itself.
    n_min = static_cast<int>(
        std::floor(sim.offset - L - kmax - 5 - std::max(0.0, -travel)));
    n_max = static_cast<int>(
        std::ceil(sim.offset + L + kmax + 5 + std::max(0.0, travel)));
  }

  SimulateReport report;
  report.config = cfg;
  report.epsilon = kink.epsilon;
  report.site_min = n_min;
  report.site_max = n_max;
  const double front_lo = sim.offset + std::min(0.0, travel);
  const double front_hi = sim.offset + std::max(0.0, travel);
  report.margin_warning = (front_lo - n_min < kmax + 5) ||
                          (n_max - front_hi < kmax + 5);

  InitFromKinkResult init =
      init_from_kink(kink, nl, kernel, sim.c, sim.offset, n_min, n_max);
  report.support_warning = init.support_warning;
  report.kappa = init.state.kappa;
  report.result = run_traveling_wave(init.state, sim.T, sim.dt);
  report.front_initial = report.result.telemetry.front()[1];
  report.front_final = report.result.telemetry.back()[1];
  return report;
}

json SimulateReport::to_json() const {
  json j = report_header("simulate", config);
  j["epsilon"] = epsilon;
  j["kappa"] = kappa;
  j["site_min"] = site_min;
  j["site_max"] = site_max;
  j["support_warning"] = support_warning;
  j["margin_warning"] = margin_warning;
  j["speed"] = result.speed;
  j["speed_r2"] = result.speed_r2;
  j["waveform_error"] = result.waveform_error;
  j["energy_drift"] = result.energy_drift;
  j["front_lost"] = result.front_lost;
  j["front_lost_time"] = result.front_lost_time;
  j["front_initial"] = front_initial;
  j["front_final"] = front_final;
  j["steps"] = static_cast<int>(result.telemetry.size()) - 1;
  return j;
}

void SimulateReport::write_telemetry_csv(std::ostream& os) const {
  os.precision(17);
  os << "t,front_position,total_energy\n";
  for (const auto& row : result.telemetry)
    os << row[0] << ',' << row[1] << ',' << row[2] << '\n';
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

ValidateReport run_validate(const NonlinearitySpec& nl, const KernelSpec& kernel,
                            const RunConfig& cfg) {
  ValidateReport report{cfg, validate_h1(nl, 101), kernel.validate_h2()};
  return report;
}

json ValidateReport::to_json() const {
  json j = report_header("validate", config);
  j["h1"] = kinklab::to_json(h1);
  j["h2"] = kinklab::to_json(h2);
  j["passed"] = passed();
  return j;
}

}  // namespace kinklab
