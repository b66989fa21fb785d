// Command-line driver: solve | sweep | refine | ls-diagnostics | simulate |
// validate. All subcommands read one JSON config document (--config) and
// accept flag overrides; reports are deterministic JSON (stdout or --out).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kinklab/compute.hpp"
#include "kinklab/errors.hpp"
#include "kinklab/harness.hpp"

namespace {

using nlohmann::json;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::string> model;
  std::optional<double> L;
  std::optional<int> m;
  std::optional<double> epsilon;
  std::optional<std::vector<double>> epsilons;
  std::optional<std::string> mode;
  std::optional<std::string> kernel_type;
  std::optional<double> kernel_decay;
  std::optional<int> kernel_kmax;
  std::optional<double> kernel_tail_tol;
  std::optional<std::vector<double>> kernel_coefficients;
  int threads = 0;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config file");
  cmd->add_option("--out", a.out_path, "report output path (default: stdout)");
  cmd->add_option("--model", a.model, "builtin model: sine_gordon | phi4");
  cmd->add_option("--L", a.L, "grid half width");
  cmd->add_option("--m", a.m, "grid subdivisions per unit");
  cmd->add_option("--epsilon", a.epsilon, "single coupling value");
  cmd->add_option("--epsilons", a.epsilons, "coupling sweep values")
      ->delimiter(',');
  cmd->add_option("--mode", a.mode, "solver mode: projected | symmetric");
  cmd->add_option("--kernel-type", a.kernel_type,
                  "nearest_neighbor | exponential | custom");
  cmd->add_option("--kernel-decay", a.kernel_decay, "exponential kernel decay");
  cmd->add_option("--kernel-kmax", a.kernel_kmax, "kernel truncation radius");
  cmd->add_option("--kernel-tail-tol", a.kernel_tail_tol,
                  "exponential kernel tail tolerance");
  cmd->add_option("--kernel-coefficients", a.kernel_coefficients,
                  "custom kernel coefficients a_0,a_1,...")
      ->delimiter(',');
  cmd->add_option("--threads", a.threads, "OpenMP thread count (0 = default)");
  cmd->add_flag("--serial", a.serial, "run the serial reference kernels");
}

json load_config(const CommonArgs& a) {
  json j = json::object();
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw kinklab::ConfigError("cannot open config " + a.config_path);
    in >> j;
  }
  if (a.model) j["model"] = *a.model;
  if (a.L) j["grid"]["half_width"] = *a.L;
  if (a.m) j["grid"]["subdivisions"] = *a.m;
  if (a.epsilon) j["epsilons"] = std::vector<double>{*a.epsilon};
  if (a.epsilons) j["epsilons"] = *a.epsilons;
  if (a.mode) j["solver"]["mode"] = *a.mode;
  if (a.kernel_type) j["kernel"]["type"] = *a.kernel_type;
  if (a.kernel_decay) j["kernel"]["decay"] = *a.kernel_decay;
  if (a.kernel_kmax) j["kernel"]["k_max"] = *a.kernel_kmax;
  if (a.kernel_tail_tol) j["kernel"]["tail_tol"] = *a.kernel_tail_tol;
  if (a.kernel_coefficients) j["kernel"]["coefficients"] = *a.kernel_coefficients;
  return j;
}

void apply_execution(const CommonArgs& a) {
  if (a.threads > 0) kinklab::compute::set_threads(a.threads);
  if (a.serial) kinklab::compute::set_default_exec(kinklab::compute::Exec::Serial);
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw kinklab::ConfigError("cannot open output " + out_path);
  out << report.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"traveling kinks of weakly coupled oscillator chains"};
  app.require_subcommand(1);

  CommonArgs solve_args, sweep_args, refine_args, ls_args, sim_args, val_args;
  std::string profile_csv, telemetry_csv, ls_csv, sweep_csv, refine_csv, from_kink;
  std::vector<int> m_list = {25, 50, 100};
  std::optional<double> sim_c, sim_T, sim_dt, sim_offset;
  std::optional<std::vector<int>> sim_sites;

  CLI::App* solve = app.add_subcommand("solve", "compute one kink");
  add_common(solve, solve_args);
  solve->add_option("--profile-csv", profile_csv, "write u(z) as CSV");

  CLI::App* sweep = app.add_subcommand("sweep", "coupling sweep + slope fits");
  add_common(sweep, sweep_args);
  sweep->add_option("--csv", sweep_csv, "also write the rows as CSV");

  CLI::App* refine = app.add_subcommand("refine", "grid refinement study");
  add_common(refine, refine_args);
  refine->add_option("--m-list", m_list, "subdivision counts")->delimiter(',');
  refine->add_option("--csv", refine_csv, "also write the rows as CSV");

  CLI::App* ls = app.add_subcommand("ls-diagnostics",
                                    "reduction diagnostics per coupling");
  add_common(ls, ls_args);
  ls->add_option("--csv", ls_csv, "also write the rows as CSV");

  CLI::App* sim = app.add_subcommand("simulate", "drive the oscillator chain");
  add_common(sim, sim_args);
  sim->add_option("--from-kink", from_kink, "reuse a solve report JSON");
  sim->add_option("--c", sim_c, "wave speed");
  sim->add_option("--T", sim_T, "integration time");
  sim->add_option("--dt", sim_dt, "time step");
  sim->add_option("--offset", sim_offset, "initial front offset");
  sim->add_option("--sites", sim_sites, "site range n_min,n_max")->delimiter(',');
  sim->add_option("--telemetry", telemetry_csv, "telemetry CSV path");

  CLI::App* validate = app.add_subcommand("validate", "check the hypotheses");
  add_common(validate, val_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      apply_execution(solve_args);
      const auto cfg = kinklab::RunConfig::from_json(load_config(solve_args));
      const auto nl = kinklab::nonlinearity_by_name(cfg.model);
      const auto report = kinklab::run_solve(nl, cfg.kernel.build(), cfg);
      emit(report.to_json(), solve_args.out_path);
      if (!profile_csv.empty()) {
        std::ofstream out(profile_csv);
        report.solution.u.write_csv(out);
      }
    } else if (*sweep) {
      apply_execution(sweep_args);
      const auto cfg = kinklab::RunConfig::from_json(load_config(sweep_args));
      const auto nl = kinklab::nonlinearity_by_name(cfg.model);
      const auto report = kinklab::run_sweep(nl, cfg.kernel.build(), cfg);
      emit(report.to_json(), sweep_args.out_path);
      if (!sweep_csv.empty()) {
        std::ofstream out(sweep_csv);
        report.write_csv(out);
      }
    } else if (*refine) {
      apply_execution(refine_args);
      const auto cfg = kinklab::RunConfig::from_json(load_config(refine_args));
      const auto nl = kinklab::nonlinearity_by_name(cfg.model);
      const auto report =
          kinklab::run_refine(nl, cfg.kernel.build(), cfg, m_list);
      emit(report.to_json(), refine_args.out_path);
      if (!refine_csv.empty()) {
        std::ofstream out(refine_csv);
        report.write_csv(out);
      }
    } else if (*ls) {
      apply_execution(ls_args);
      const auto cfg = kinklab::RunConfig::from_json(load_config(ls_args));
      const auto nl = kinklab::nonlinearity_by_name(cfg.model);
      const auto report = kinklab::run_ls_diagnostics(nl, cfg.kernel.build(), cfg);
      emit(report.to_json(), ls_args.out_path);
      if (!ls_csv.empty()) {
        std::ofstream out(ls_csv);
        report.write_csv(out);
      }
    } else if (*sim) {
      apply_execution(sim_args);
      json cfg_json = load_config(sim_args);
      if (sim_c) cfg_json["sim"]["c"] = *sim_c;
      if (sim_T) cfg_json["sim"]["T"] = *sim_T;
      if (sim_dt) cfg_json["sim"]["dt"] = *sim_dt;
      if (sim_offset) cfg_json["sim"]["offset"] = *sim_offset;
      if (sim_sites) {
        if (sim_sites->size() != 2)
          throw kinklab::ConfigError("--sites needs n_min,n_max");
        cfg_json["sim"]["site_min"] = (*sim_sites)[0];
        cfg_json["sim"]["site_max"] = (*sim_sites)[1];
      }
      auto cfg = kinklab::RunConfig::from_json(cfg_json);
      kinklab::SimulateReport report = [&] {
        if (!from_kink.empty()) {
          std::ifstream in(from_kink);
          if (!in)
            throw kinklab::ConfigError("cannot open kink report " + from_kink);
          json kink_json;
          in >> kink_json;
          // The chain must be driven by the model/kernel the kink solves.
          cfg.model = kink_json.value("model", cfg.model);
          cfg.kernel = kinklab::KernelConfig::from_json(kink_json.at("kernel"));
          cfg.grid = kinklab::GridConfig::from_json(kink_json.at("grid"));
          const auto kink = kinklab::kink_from_report(kink_json);
          cfg.epsilons = {kink.epsilon};
          const auto nl = kinklab::nonlinearity_by_name(cfg.model);
          return kinklab::run_simulation_from(kink, nl, cfg.kernel.build(), cfg);
        }
        const auto nl = kinklab::nonlinearity_by_name(cfg.model);
        return kinklab::run_simulation(nl, cfg.kernel.build(), cfg);
      }();
      emit(report.to_json(), sim_args.out_path);
      if (!telemetry_csv.empty()) {
        std::ofstream out(telemetry_csv);
        report.write_telemetry_csv(out);
      }
    } else if (*validate) {
      apply_execution(val_args);
      const auto cfg = kinklab::RunConfig::from_json(load_config(val_args));
      const auto nl = kinklab::nonlinearity_by_name(cfg.model);
      const auto report = kinklab::run_validate(nl, cfg.kernel.build(), cfg);
      emit(report.to_json(), val_args.out_path);
      return report.passed() ? 0 : 1;
    }
  } catch (const kinklab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
