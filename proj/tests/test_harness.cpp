#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kinklab/errors.hpp"
#include "kinklab/harness.hpp"
#include "test_helpers.hpp"

using namespace kinklab;
using nlohmann::json;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.model = "phi4";
  cfg.grid.half_width = 20.0;
  cfg.grid.subdivisions = 25;
  cfg.epsilons = {0.025, 0.05, 0.1};
  return cfg;
}

}  // namespace

TEST_CASE("slope fitting") {
  SUBCASE("recovers a power law") {
    const std::vector<double> x = {0.0125, 0.025, 0.05, 0.1};
    std::vector<double> y;
    for (double v : x) y.push_back(3.7 * v * v);
    const auto fit = fit_slope(x, y);
    REQUIRE(fit.has_value());
    CHECK(fit->slope == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit->r2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit->reliable);
  }

  SUBCASE("needs three valid points") {
    CHECK_FALSE(fit_slope({0.1, 0.2}, {1.0, 2.0}).has_value());
    CHECK_FALSE(fit_slope({0.1, 0.2, 0.3}, {1.0, -2.0, 3.0}).has_value());
  }

  SUBCASE("flags scattered data as unreliable") {
    const std::vector<double> x = {0.1, 0.2, 0.4, 0.8};
    const std::vector<double> y = {1.0, 5.0, 1.3, 9.0};
    const auto fit = fit_slope(x, y);
    REQUIRE(fit.has_value());
    CHECK_FALSE(fit->reliable);
  }
}

TEST_CASE("config round trip through JSON") {
  RunConfig cfg = small_config();
  cfg.kernel.type = "exponential";
  cfg.kernel.decay = 0.5;
  cfg.kernel.k_max = 12;
  cfg.kernel.tail_tol = 0.5;
  cfg.solver.mode = "symmetric";
  cfg.solver.ball_radius = 2.5;
  cfg.sim.site_min = -10;
  cfg.sim.site_max = 40;
  const json j = cfg.to_json();
  const RunConfig back = RunConfig::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.solver.ball_radius.has_value());
  CHECK(*back.sim.site_min == -10);

  // defaults fill the gaps
  const RunConfig defaults = RunConfig::from_json(json::object());
  CHECK(defaults.model == "phi4");
  CHECK(defaults.grid.subdivisions == 100);
  CHECK(defaults.epsilons.size() == 4);
}

TEST_CASE("kernel config validation") {
  KernelConfig kc;
  kc.type = "unknown";
  CHECK_THROWS_AS(kc.build(), ConfigError);
  kc.type = "custom";
  CHECK_THROWS_AS(kc.build(), ConfigError);  // missing coefficients
  kc.coefficients = {-1.0, 0.5};
  CHECK(kc.build().k_max() == 1);
}

TEST_CASE("solve report and its reconstruction") {
  const RunConfig cfg = [&] {
    RunConfig c = small_config();
    c.epsilons = {0.05};
    return c;
  }();
  const auto nl = nonlinearity_by_name(cfg.model);
  const auto report = run_solve(nl, cfg.kernel.build(), cfg);
  const json j = report.to_json();
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("command") == "solve");
  CHECK(j.at("epsilon") == 0.05);
  CHECK(j.at("u").size() == static_cast<std::size_t>(cfg.grid.build().point_count()));

  const KinkSolution back = kink_from_report(j);
  CHECK(back.epsilon == report.solution.epsilon);
  for (int i = 0; i < back.u.size(); ++i)
    CHECK(back.u[i] == report.solution.u[i]);

  json bad = j;
  bad["u"] = std::vector<double>{1.0, 2.0};
  CHECK_THROWS_AS(kink_from_report(bad), ConfigError);
}

TEST_CASE("sweep") {
  const RunConfig cfg = small_config();
  const auto nl = nonlinearity_by_name(cfg.model);
  const auto report = run_sweep(nl, cfg.kernel.build(), cfg);

  SUBCASE("rows are sorted and populated") {
    REQUIRE(report.rows.size() == 3);
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
      CHECK(report.rows[i].epsilon < report.rows[i + 1].epsilon);
    for (const auto& row : report.rows) {
      CHECK(row.ok);
      CHECK(row.h2_distance > 0.0);
      CHECK(row.g_l2 > 0.0);
      CHECK(row.iterations > 0);
    }
  }

  SUBCASE("scaling laws show up already on the coarse grid") {
    CHECK(report.fitted_slopes.at("h2_distance").slope ==
          doctest::Approx(1.0).epsilon(0.1));
    CHECK(report.fitted_slopes.at("g_l2").slope ==
          doctest::Approx(2.0).epsilon(0.1));
  }

  SUBCASE("failures are recorded per row and the sweep continues") {
    RunConfig bad = cfg;
    bad.epsilons = {0.025, -1.0, 0.05};
    const auto rep = run_sweep(nl, bad.kernel.build(), bad);
    REQUIRE(rep.rows.size() == 3);
    CHECK_FALSE(rep.rows.front().ok);  // sorted: -1 first
    CHECK(!rep.rows.front().error.empty());
    CHECK(rep.rows[1].ok);
    CHECK(rep.rows[2].ok);
  }

  SUBCASE("an empty sweep is an error") {
    RunConfig empty = cfg;
    empty.epsilons = {};
    CHECK_THROWS_AS(run_sweep(nl, empty.kernel.build(), empty), EmptySweepError);
  }

  SUBCASE("reports are deterministic") {
    const auto again = run_sweep(nl, cfg.kernel.build(), cfg);
    CHECK(again.to_json().dump() == report.to_json().dump());
  }
}

TEST_CASE("refinement study") {
  const RunConfig cfg = [&] {
    RunConfig c = small_config();
    c.epsilons = {0.05};
    return c;
  }();
  const auto nl = testing::asymmetric_quintic();
  const auto kernel = cfg.kernel.build();

  CHECK_THROWS_AS(run_refine(nl, kernel, cfg, {25, 50}), ConfigError);
  CHECK_THROWS_AS(run_refine(nl, kernel, cfg, {50, 25, 100}), ConfigError);

  RunConfig wide = cfg;
  wide.grid.half_width = 30.0;  // keeps the slow left tail away from the ends
  const auto report = run_refine(nl, kernel, wide, {10, 20, 40});
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) CHECK(row.ok);
  CHECK(report.fitted_slopes.at("multiplier_abs_vs_h").slope ==
        doctest::Approx(2.0).epsilon(0.25));
  CHECK(report.fitted_slopes.at("lambda1_zero_vs_h").slope ==
        doctest::Approx(2.0).epsilon(0.25));

  SUBCASE("csv rows and determinism") {
    std::ostringstream csv;
    report.write_csv(csv);
    std::istringstream is(csv.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "m,h,multiplier_abs,lemma1_pairing,lambda1_zero_abs");
    const auto again = run_refine(nl, kernel, wide, {10, 20, 40});
    CHECK(again.to_json().dump() == report.to_json().dump());
  }
}

TEST_CASE("reduction diagnostics report") {
  RunConfig cfg = small_config();
  cfg.epsilons = {0.05, 0.1, 0.2};
  const auto nl = nonlinearity_by_name(cfg.model);
  const auto report = run_ls_diagnostics(nl, cfg.kernel.build(), cfg);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.ok);
    CHECK(row.gap > 1.0);
    CHECK(row.vstar_iterations <= 30);
  }
  CHECK(std::abs(report.d_estimate) <= 1e-2);
  CHECK(report.fitted_slopes.count("vstar_h2") == 1);

  std::ostringstream csv;
  report.write_csv(csv);
  std::istringstream is(csv.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "epsilon,lambda1,g_l2,vstar_h2,gap,alignment");

  SUBCASE("deterministic reruns") {
    const auto again = run_ls_diagnostics(nl, cfg.kernel.build(), cfg);
    CHECK(again.to_json().dump() == report.to_json().dump());
  }
}

TEST_CASE("simulation report") {
  RunConfig cfg = small_config();
  cfg.grid.subdivisions = 50;
  cfg.epsilons = {0.05};
  cfg.sim.T = 2.0;
  cfg.sim.dt = 0.01;
  const auto nl = nonlinearity_by_name(cfg.model);
  const auto report = run_simulation(nl, cfg.kernel.build(), cfg);

  CHECK(report.kappa == doctest::Approx(0.05));
  CHECK(report.site_min < -20);
  CHECK(report.site_max > 20);
  CHECK_FALSE(report.margin_warning);
  CHECK(report.result.telemetry.size() == 201);
  CHECK(report.result.speed == doctest::Approx(1.0).epsilon(0.02));
  CHECK(report.front_final > report.front_initial);

  std::ostringstream csv;
  report.write_telemetry_csv(csv);
  std::istringstream is(csv.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,front_position,total_energy");

  SUBCASE("an explicit narrow range raises the margin warning") {
    cfg.sim.site_min = -3;
    cfg.sim.site_max = 3;
    const auto narrow = run_simulation(nl, cfg.kernel.build(), cfg);
    CHECK(narrow.margin_warning);
  }

  SUBCASE("reuse of a stored kink matches a fresh solve") {
    const auto solve_rep = run_solve(nl, cfg.kernel.build(), cfg);
    const auto kink = kink_from_report(solve_rep.to_json());
    const auto reused = run_simulation_from(kink, nl, cfg.kernel.build(), cfg);
    CHECK(reused.to_json().dump() == report.to_json().dump());
  }
}

TEST_CASE("hypothesis validation report") {
  RunConfig cfg = small_config();
  const auto nl = nonlinearity_by_name(cfg.model);
  const auto good = run_validate(nl, cfg.kernel.build(), cfg);
  CHECK(good.passed());
  const json j = good.to_json();
  CHECK(j.at("h1").at("passed") == true);
  CHECK(j.at("h2").at("passed") == true);

  const auto bad = run_validate(nl, KernelSpec::custom({0.0, -1.0}), cfg);
  CHECK_FALSE(bad.passed());
}
