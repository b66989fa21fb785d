// End-to-end acceptance suite. Every numbered check prints one PASS/FAIL
// line; the exit code is the number of failed checks.
//
//   acceptance                 run everything
//   acceptance --criteria 1,4  run a subset
//
// Check 9 drives the oscillator chain at long horizons. The far-field
// states of a kink are unstable equilibria of the time dynamics (both well
// curvatures are negative), so discretization-level seeds grow like
// exp(sqrt(-f'(0)) t); the wake decoheres after a few units of time no
// matter how fine the solve. The check is evaluated as stated and reports
// the measured values together with short-horizon diagnostics.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kinklab/errors.hpp"
#include "kinklab/fit.hpp"
#include "kinklab/harness.hpp"
#include "kinklab/lyapunov_schmidt.hpp"
#include "test_helpers.hpp"

using namespace kinklab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_checks = 0;

void check(bool ok, const char* fmt, ...) {
  ++g_checks;
  if (!ok) ++g_failures;
  std::printf("  [%s] ", ok ? "PASS" : "FAIL");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

void note(const char* fmt, ...) {
  std::printf("         ");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

void heading(int id, const char* title) {
  std::printf("criterion %d: %s\n", id, title);
  std::fflush(stdout);
}

RunConfig sweep_config(const std::string& model, const std::string& kernel_type) {
  RunConfig cfg;
  cfg.model = model;
  cfg.kernel.type = kernel_type;
  cfg.kernel.decay = 0.5;
  cfg.kernel.k_max = 40;
  cfg.kernel.tail_tol = 1e-6;
  cfg.grid.half_width = 20.0;
  cfg.grid.subdivisions = 100;
  cfg.epsilons = {0.0125, 0.025, 0.05, 0.1};
  return cfg;
}

struct SweepArtifacts {
  SweepReport report;
  double seconds = 0.0;
};

// Shared across checks 1, 2 and 6.
const SweepArtifacts& phi4_sweep() {
  static const SweepArtifacts a = [] {
    const RunConfig cfg = sweep_config("phi4", "nearest_neighbor");
    const auto t0 = Clock::now();
    SweepReport rep = run_sweep(phi4(), cfg.kernel.build(), cfg);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return SweepArtifacts{std::move(rep), secs};
  }();
  return a;
}

const SweepArtifacts& sg_sweep() {
  static const SweepArtifacts a = [] {
    const RunConfig cfg = sweep_config("sine_gordon", "exponential");
    const auto t0 = Clock::now();
    SweepReport rep = run_sweep(sine_gordon(), cfg.kernel.build(), cfg);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return SweepArtifacts{std::move(rep), secs};
  }();
  return a;
}

// Shared across checks 5 and 7.
const LsReport& phi4_ls() {
  static const LsReport rep = [] {
    RunConfig cfg = sweep_config("phi4", "nearest_neighbor");
    cfg.epsilons = {0.05, 0.1, 0.2, 0.4};
    return run_ls_diagnostics(phi4(), cfg.kernel.build(), cfg);
  }();
  return rep;
}

void criterion_1() {
  heading(1, "kink distance scales linearly in the coupling");
  for (const auto* art : {&phi4_sweep(), &sg_sweep()}) {
    const auto& rep = art->report;
    const auto& fit = rep.fitted_slopes.at("h2_distance");
    const std::string tag = rep.config.model + "/" + rep.config.kernel.type;
    check(std::abs(fit.slope - 1.0) <= 0.1 && fit.r2 >= 0.999,
          "%s: ||u_eps - u0||_H2 slope %.4f (1.0 +- 0.1), r2 %.6f (>= 0.999)",
          tag.c_str(), fit.slope, fit.r2);
    check(art->seconds <= 300.0, "%s: sweep runtime %.1f s (<= 300 s)",
          tag.c_str(), art->seconds);
  }
}

void criterion_2() {
  heading(2, "translation multiplier vanishes under refinement");
  double worst_b = 0.0;
  for (const auto* art : {&phi4_sweep(), &sg_sweep()})
    for (const auto& row : art->report.rows)
      worst_b = std::max(worst_b, row.multiplier_abs);
  check(worst_b <= 1e-4, "max |b| over both sweeps at m=100: %.3e (<= 1e-4)",
        worst_b);
  note("builtins are odd-symmetric, so their discrete multiplier cancels by");
  note("parity to rounding level; the refinement law is exhibited on an");
  note("asymmetric closed-form model where the h^2 stencil bias survives.");

  RunConfig cfg;
  cfg.model = "asymmetric_quintic";
  cfg.grid.half_width = 30.0;  // keeps the slow left tail clear of the ends
  cfg.epsilons = {0.05};
  const auto rep = run_refine(testing::asymmetric_quintic(), cfg.kernel.build(),
                              cfg, {25, 50, 100});
  for (const auto& row : rep.rows)
    note("m=%3d: |b| = %.3e, lambda1(0) floor = %.3e", row.m,
         row.multiplier_abs, row.lambda1_zero_abs);
  const auto& bfit = rep.fitted_slopes.at("multiplier_abs_vs_h");
  check(std::abs(bfit.slope - 2.0) <= 0.5,
        "|b| vs h slope over m in {25,50,100}: %.3f (2.0 +- 0.5), r2 %.5f",
        bfit.slope, bfit.r2);
  const auto& lfit = rep.fitted_slopes.at("lambda1_zero_vs_h");
  check(std::abs(lfit.slope - 2.0) <= 0.5,
        "lambda1(0) floor vs h slope: %.3f (2.0 +- 0.5)", lfit.slope);
}

void criterion_3() {
  heading(3, "shift operator: vanishing pairing and the norm bound");
  const Grid grid(20.0, 100);
  const auto nn = KernelSpec::nearest_neighbor();
  const auto ex = KernelSpec::exponential(0.5, 40, 1e-6);
  for (const auto& nl : {phi4(), sine_gordon()}) {
    const auto u0 = GridFunction::sample(grid, *nl.exact_kink, 0.0, 1.0);
    const auto du0 = GridFunction::sample(grid, *nl.exact_kink_derivative, 0.0, 0.0);
    for (const auto* k : {&nn, &ex}) {
      const auto r = check_lemma1(*k, u0);
      const double normalized =
          std::abs(r.pairing) / (r.delta_l2 * du0.norm(NormKind::L2));
      const double bound =
          std::sqrt(k->sum_abs() * k->sum_abs_k2()) * du0.norm(NormKind::L2);
      const std::string tag =
          nl.name + "/" + (k == &nn ? "nearest_neighbor" : "exponential");
      check(normalized <= 1e-8, "%s: |(Du0,u0')|/(||Du0|| ||u0'||) = %.2e (<= 1e-8)",
            tag.c_str(), normalized);
      check(r.delta_l2 <= bound, "%s: ||Du0|| = %.4f <= chain bound %.4f",
            tag.c_str(), r.delta_l2, bound);
    }
  }
}

void criterion_4() {
  heading(4, "constrained solver round trip");
  const Grid grid(20.0, 100);
  const auto nl = phi4();
  const auto kernel = KernelSpec::nearest_neighbor();
  const auto u0 = GridFunction::sample(grid, *nl.exact_kink, 0.0, 1.0);
  const auto du0 = GridFunction::sample(grid, *nl.exact_kink_derivative, 0.0, 0.0);
  const auto op = assemble_operator(nl, u0, kernel, 0.0);
  const BorderedSolver solver(op, du0);
  double worst_rec = 0.0, worst_con = 0.0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    auto psi = testing::project_off(testing::smooth_random(grid, seed), du0);
    psi[0] = 0.0;
    psi[grid.point_count() - 1] = 0.0;
    const auto a_psi = op.matrix.apply_symmetric(psi.values());
    GridFunction g(grid);
    for (int i = 0; i < grid.point_count(); ++i)
      g[i] = a_psi[static_cast<std::size_t>(i)];
    const auto sol = solver.solve(g);
    worst_rec = std::max(worst_rec, (sol.phi - psi).norm(NormKind::H2) /
                                        psi.norm(NormKind::H2));
    worst_con =
        std::max(worst_con, std::abs(inner_product(sol.phi, du0)) /
                                (sol.phi.norm(NormKind::L2) * du0.norm(NormKind::L2)));
  }
  check(worst_rec <= 1e-8, "20 seeded round trips: worst relative H2 error %.2e (<= 1e-8)",
        worst_rec);
  check(worst_con <= 1e-12, "orthogonality constraint: worst scaled residual %.2e (<= 1e-12)",
        worst_con);
}

void criterion_5() {
  heading(5, "near-zero eigenvalue: quadratic scaling and vanishing drift");
  const auto& ls = phi4_ls();
  const auto& lfit = ls.fitted_slopes.at("lambda1_floor_corrected");
  check(std::abs(lfit.slope - 2.0) <= 0.3,
        "floor-corrected lambda1 slope over eps in {0.05..0.4}: %.3f (2.0 +- 0.3)",
        lfit.slope);
  const auto& afit = ls.fitted_slopes.at("alignment");
  check(std::abs(afit.slope - 1.0) <= 0.3,
        "eigenfunction alignment slope: %.3f (1.0 +- 0.3)", afit.slope);

  // Drift certificate: the eps-linear coefficient of lambda1 vanishes in the
  // continuum. The plain integral at resolution m carries the same O(h^2)
  // floor as lambda1(0) itself; the h^2-extrapolated pair (m=50, m=100)
  // removes it, matching the floor-correction convention used for lambda1.
  const auto nn = KernelSpec::nearest_neighbor();
  const auto ex = KernelSpec::exponential(0.5, 40, 1e-6);
  for (const auto& [nl, kernel, tag] :
       {std::tuple{phi4(), nn, "phi4/nearest_neighbor"},
        std::tuple{sine_gordon(), ex, "sine_gordon/exponential"}}) {
    const double d50 =
        ReductionAnalysis(nl, kernel, Grid(20.0, 50)).eigenvalue_slope_estimate();
    const double d100 =
        ReductionAnalysis(nl, kernel, Grid(20.0, 100)).eigenvalue_slope_estimate();
    const double extrapolated = (4.0 * d100 - d50) / 3.0;
    note("%s: drift integral at m=50: %.3e, m=100: %.3e", tag, d50, d100);
    check(std::abs(extrapolated) <= 1e-6,
          "%s: h^2-extrapolated drift certificate %.2e (<= 1e-6)", tag,
          extrapolated);
    check(std::abs(d100) < std::abs(d50),
          "%s: plain integral decreases under refinement (%.2e -> %.2e)", tag,
          d50, d100);
  }
}

void criterion_6() {
  heading(6, "corrected-profile residual scales quadratically");
  for (const auto* art : {&phi4_sweep(), &sg_sweep()}) {
    const auto& rep = art->report;
    const auto& fit = rep.fitted_slopes.at("g_l2");
    const std::string tag = rep.config.model + "/" + rep.config.kernel.type;
    check(std::abs(fit.slope - 2.0) <= 0.1,
          "%s: ||G(eps)||_L2 slope %.4f (2.0 +- 0.1), r2 %.6f", tag.c_str(),
          fit.slope, fit.r2);
  }
}

void criterion_7() {
  heading(7, "reduction explorer");
  const auto& ls = phi4_ls();
  const auto& vfit = ls.fitted_slopes.at("vstar_h2");
  check(std::abs(vfit.slope - 2.0) <= 0.3,
        "||v*(0,eps)||_H2 slope: %.3f (2.0 +- 0.3)", vfit.slope);
  int iters_at_005 = 0;
  for (const auto& row : ls.rows)
    if (row.epsilon == 0.05) iters_at_005 = row.vstar_iterations;
  check(iters_at_005 > 0 && iters_at_005 <= 30,
        "complement iteration count at eps=0.05: %d (<= 30)", iters_at_005);

  const Grid grid(20.0, 100);
  const ReductionAnalysis analysis(phi4(), KernelSpec::nearest_neighbor(), grid);
  const auto pair0 = analysis.principal_eigenpair(0.0);
  const double b00 = analysis.bifurcation_value(0.0, 0.0, pair0);
  check(b00 == 0.0, "B(0, 0) = %.17g (exactly zero)", b00);
}

void criterion_8() {
  heading(8, "projected and symmetric modes agree");
  const Grid grid(20.0, 100);
  const auto nn = KernelSpec::nearest_neighbor();
  const auto ex = KernelSpec::exponential(0.5, 40, 1e-6);
  for (const auto& [nl, kernel, tag] :
       {std::tuple{phi4(), nn, "phi4/nearest_neighbor"},
        std::tuple{sine_gordon(), ex, "sine_gordon/exponential"}}) {
    const KinkSolver solver(nl, kernel, grid);
    SolverOptions opts;
    opts.epsilon = 0.05;
    const auto proj = solver.solve(opts);
    opts.mode = SolverMode::Symmetric;
    const auto symm = solver.solve(opts);
    const double diff = (proj.phi - symm.phi).norm(NormKind::H2);
    check(diff <= 1e-8, "%s at eps=0.05: H2 distance between modes %.2e (<= 1e-8)",
          tag, diff);
  }
}

void criterion_9() {
  heading(9, "chain simulation");
  const Grid grid(20.0, 100);
  const auto nl = phi4();
  const auto kernel = KernelSpec::nearest_neighbor();
  SolverOptions opts;
  opts.epsilon = 0.05;
  const auto kink = KinkSolver(nl, kernel, grid).solve(opts);

  // (a) energy drift over T=100 at dt=0.01 and its halving behavior.
  double drift_100[2];
  int idx = 0;
  for (const double dt : {0.01, 0.005}) {
    auto init = init_from_kink(kink, nl, kernel, 1.0, 0.0, -27, 127);
    const auto res = run_traveling_wave(init.state, 100.0, dt);
    drift_100[idx++] = res.energy_drift;
  }
  check(drift_100[0] <= 1e-6,
        "relative energy drift over T=100 at dt=0.01: %.3e (<= 1e-6)",
        drift_100[0]);
  check(std::isfinite(drift_100[0]) && std::isfinite(drift_100[1]) &&
            drift_100[0] / drift_100[1] >= 3.0 &&
            drift_100[0] / drift_100[1] <= 5.0,
        "drift quarters when dt halves over T=100: ratio %.2f",
        drift_100[0] / drift_100[1]);

  // (b, c) speed and waveform over T=50.
  auto init50 = init_from_kink(kink, nl, kernel, 1.0, 0.0, -27, 77);
  const auto res50 = run_traveling_wave(init50.state, 50.0, 0.01);
  check(!res50.front_lost && std::abs(res50.speed - 1.0) <= 0.02,
        "front speed over T=50: %.4f, front %s (|speed-1| <= 0.02 with the "
        "front intact)",
        res50.speed, res50.front_lost ? "lost" : "intact");
  check(std::isfinite(res50.waveform_error) && res50.waveform_error <= 5e-2,
        "waveform error at T=50: %.3e (<= 5e-2)", res50.waveform_error);
  if (res50.front_lost) {
    note("the far-field equilibria are unstable (f'(0) = f'(1) = -4): seeds");
    note("of size ~h^2 grow like exp(2t); the wake decohered at t = %.2f and",
         res50.front_lost_time);
    note("the double-well potential is unbounded below, so the state leaves");
    note("the kink neighborhood regardless of resolution. Speed over the");
    note("coherent window: %.4f.", res50.speed);
  }

  // Short-horizon diagnostics: the same claims hold cleanly before the
  // instability reaches order one.
  const auto drift_at = [&](double dt) {
    auto init = init_from_kink(kink, nl, kernel, 1.0, 0.0, -27, 37);
    return run_traveling_wave(init.state, 5.0, dt);
  };
  const auto d1 = drift_at(0.01);
  const auto d2 = drift_at(0.005);
  note("diagnostics at T=5: speed %.4f, waveform %.2e, drift %.2e,",
       d1.speed, d1.waveform_error, d1.energy_drift);
  note("drift ratio dt=0.01 -> 0.005: %.2f", d1.energy_drift / d2.energy_drift);

  // (d) time reversal.
  auto init = init_from_kink(kink, nl, kernel, 1.0, 0.0, -27, 37);
  const auto u0 = init.state.u;
  const auto p0 = init.state.p;
  for (int k = 0; k < 50; ++k) step(init.state, 0.01);
  for (auto& p : init.state.p) p = -p;
  for (int k = 0; k < 50; ++k) step(init.state, 0.01);
  for (auto& p : init.state.p) p = -p;
  double worst = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    worst = std::max(worst, std::abs(init.state.u[i] - u0[i]));
    worst = std::max(worst, std::abs(init.state.p[i] - p0[i]));
  }
  check(worst <= 1e-12, "time-reversal round trip: max deviation %.2e (<= 1e-12)",
        worst);
}

void criterion_10() {
  heading(10, "byte-identical reports for identical configs");
  RunConfig cfg;
  cfg.model = "phi4";
  cfg.grid.subdivisions = 25;
  cfg.epsilons = {0.025, 0.05, 0.1};
  cfg.sim.T = 2.0;

  const auto nl = nonlinearity_by_name(cfg.model);
  const auto kernel = cfg.kernel.build();
  {
    RunConfig one = cfg;
    one.epsilons = {0.05};
    const std::string a = run_solve(nl, kernel, one).to_json().dump(2);
    const std::string b = run_solve(nl, kernel, one).to_json().dump(2);
    check(a == b, "solve: two runs, %zu bytes each, identical: %s", a.size(),
          a == b ? "yes" : "no");
  }
  {
    const std::string a = run_sweep(nl, kernel, cfg).to_json().dump(2);
    const std::string b = run_sweep(nl, kernel, cfg).to_json().dump(2);
    check(a == b, "sweep: two runs, %zu bytes each, identical: %s", a.size(),
          a == b ? "yes" : "no");
  }
  {
    RunConfig one = cfg;
    one.epsilons = {0.05};
    const std::string a = run_simulation(nl, kernel, one).to_json().dump(2);
    const std::string b = run_simulation(nl, kernel, one).to_json().dump(2);
    check(a == b, "simulate: two runs, %zu bytes each, identical: %s", a.size(),
          a == b ? "yes" : "no");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criteria" && i + 1 < argc) {
      const std::string list = argv[++i];
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t next = list.find(',', pos);
        if (next == std::string::npos) next = list.size();
        wanted.insert(std::stoi(list.substr(pos, next - pos)));
        pos = next + 1;
      }
    }
  }
  const auto enabled = [&](int id) { return wanted.empty() || wanted.count(id); };

  const auto t0 = Clock::now();
  try {
    if (enabled(1)) criterion_1();
    if (enabled(2)) criterion_2();
    if (enabled(3)) criterion_3();
    if (enabled(4)) criterion_4();
    if (enabled(5)) criterion_5();
    if (enabled(6)) criterion_6();
    if (enabled(7)) criterion_7();
    if (enabled(8)) criterion_8();
    if (enabled(9)) criterion_9();
    if (enabled(10)) criterion_10();
  } catch (const std::exception& e) {
    std::printf("[ABORT] unexpected exception: %s\n", e.what());
    return 99;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%d/%d checks passed in %.1f s\n", g_checks - g_failures, g_checks,
              secs);
  return g_failures;
}
