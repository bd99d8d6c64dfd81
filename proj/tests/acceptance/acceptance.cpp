// Acceptance criteria, one PASS/FAIL line each. Exit status is non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnslab/app/app.hpp"
#include "cnslab/diagnostics.hpp"
#include "cnslab/dynamics.hpp"
#include "cnslab/estimates.hpp"
#include "cnslab/lagrangian.hpp"
#include "cnslab/lame.hpp"
#include "cnslab/oracles/checks.hpp"
#include "cnslab/oracles/dense.hpp"
#include "cnslab/scenario.hpp"
#include "cnslab/simulation.hpp"
#include "cnslab/spectral.hpp"

namespace fs = std::filesystem;
using namespace cnslab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

PhysParams params(double mu, double lambda) {
  PhysParams p;
  p.mu = mu;
  p.lambda = lambda;
  return p;
}

State manufactured(int n, std::uint64_t seed) {
  Scenario sc;
  sc.kind = ScenarioKind::manufactured;
  sc.amplitude = 0.35;
  sc.max_mode = 3;
  sc.seed = seed;
  return make_scenario(sc, GridSpec::cube(2, n), params(0.05, 0.01));
}

State shear64() {
  Scenario sc;
  sc.kind = ScenarioKind::shear;
  sc.amplitude = 0.1;
  return make_scenario(sc, GridSpec::cube(2, 64), PhysParams{});
}

double rel_mass_change(const Trajectory& tr) {
  return std::abs(tr.records.back().mass - tr.mass0) / tr.mass0;
}

// Every trajectory produced here, for the positivity criterion.
struct RunLog {
  std::string name;
  double min_theta;
  double min_p_preclip;
  double clip_budget_rel;
};
std::vector<RunLog> g_runs;

void log_run(const std::string& name, const Trajectory& tr) {
  const double pmass = tr.final_state ? integrate(tr.final_state->p) : 1.0;
  g_runs.push_back({name, tr.min_theta_seen, tr.min_p_preclip_seen, tr.clipped_p_mass / pmass});
}

// ---------------------------------------------------------------------------

Outcome c1_operators() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  bool ok = true;
  for (int dim : {2, 3}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto r = oracle::check_operators(dim, seed);
      worst = std::max(worst, r.value);
      ok = ok && r.passed;
    }
  }
  const double secs = seconds_since(t0);
  return {ok && worst <= 1e-12 && secs < 5.0,
          fmt("max-abs error %.3e (tol 1e-12), %.2f s (limit 5 s)", worst, secs)};
}

Outcome c2_conservation() {
  const auto t0 = Clock::now();
  RunConfig rc;
  rc.t_end = 0.5;
  rc.output_every = 10;
  const Trajectory tr = run(shear64(), rc);
  const double secs = seconds_since(t0);
  log_run("shear N=64", tr);
  const double mass = rel_mass_change(tr);
  const double energy = std::abs(tr.records.back().total_energy - tr.energy0) / tr.energy0;

  // mass on a second smooth run with non-trivial density
  RunConfig rm;
  rm.t_end = 0.1;
  const Trajectory tm = run(manufactured(32, 3), rm);
  log_run("manufactured N=32", tm);
  const double mass_m = rel_mass_change(tm);

  const bool ok = tr.verdict == Verdict::completed && tm.verdict == Verdict::completed && mass <= 1e-10 &&
                  mass_m <= 1e-10 && energy <= 1e-6 && secs < 120.0;
  return {ok, fmt("shear: mass %.2e, energy drift %.2e (tol 1e-10 / 1e-6), %.1f s; manufactured mass %.2e", mass,
                  energy, secs, mass_m)};
}

Outcome c4_momentum() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) worst = std::max(worst, momentum_identity_residual(manufactured(64, seed)));
  return {worst <= 1e-8, fmt("max residual %.3e over 20 states at N=64 (tol 1e-8)", worst)};
}

Outcome c5_energy_law() {
  double worst = 0.0;
  int non_monotone = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double r32 = energy_law_residual(manufactured(32, seed)).relres;
    const double r64 = energy_law_residual(manufactured(64, seed)).relres;
    const double r128 = energy_law_residual(manufactured(128, seed)).relres;
    worst = std::max(worst, r64);
    if (!(r32 > r64 && r64 > r128)) ++non_monotone;
  }
  return {worst <= 1e-6 && non_monotone == 0,
          fmt("max residual %.3e at N=64 (tol 1e-6); %d non-monotone refinements", worst, non_monotone)};
}

Outcome c6_coefficient() {
  const auto sweep = oracle::check_coefficient_sweep();
  const auto ref = oracle::check_coefficient_reference();
  return {sweep.passed && ref.passed, sweep.detail + "; (5, 1, 6) -> " + ref.detail};
}

Outcome c7_pressure_path() {
  struct Level {
    double cfl, dt;
  };
  const Level levels[] = {{0.8, 2e-3}, {0.4, 1e-3}, {0.2, 5e-4}};
  std::vector<double> err;
  PressureFormulaReport main_report;
  for (const Level& lv : levels) {
    RunConfig rc;
    rc.t_end = 0.25;
    rc.cfl = lv.cfl;
    rc.output_every = 1000000;
    rc.snapshot_every = 1;
    rc.keep_snapshots = true;
    Trajectory tr = run(shear64(), rc);
    log_run(fmt("shear tracers cfl=%.1f", lv.cfl), tr);
    const FieldSeries series(tr.snapshots);
    tr.snapshots.clear();
    const auto seeds = lattice_seeds(2, GridSpec::cube(2, 64).length, 4);
    AdvectOptions opt;
    opt.t0 = 0.0;
    opt.t1 = 0.25;
    opt.dt = lv.dt;
    const PressureFormulaReport r = pressure_formula_check(advect(series, seeds, opt));
    err.push_back(r.max_rel_error);
    if (lv.cfl == 0.4) main_report = r;
  }
  const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
  const double order = std::min(o1, o2);
  const bool ok = main_report.checked == 16 && main_report.max_rel_error <= 1e-2 && order >= 1.5 &&
                  main_report.rhs_nonnegative;
  return {ok, fmt("error %.2e with %zu tracers (tol 1e-2); errors %.2e %.2e %.2e, order %.2f (>= 1.5); rhs >= 0: %s",
                  main_report.max_rel_error, main_report.checked, err[0], err[1], err[2], order,
                  main_report.rhs_nonnegative ? "yes" : "no")};
}

Outcome c8_lame() {
  double worst_res = 0.0;
  // random sources over dimensions and viscosities
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int dim = seed % 2 ? 2 : 3;
    const GridSpec g = GridSpec::cube(dim, dim == 2 ? 64 : 16);
    const PhysParams p = params(0.05 * seed, seed % 3 == 0 ? -0.6 * 0.05 * seed : 0.02 * seed);
    const VectorField f = oracle::random_vector(g, -1.0, 1.0, seed);
    worst_res = std::max(worst_res, solve_lame(f, p).residual);
  }
  // pressure-gradient sources from smooth states
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const State s = manufactured(64, seed);
    worst_res = std::max(worst_res, solve_lame(gradient(s.p) * -1.0, s.params).residual);
  }
  double dense = 0.0;
  bool dense_ok = true;
  for (int dim : {2, 3}) {
    for (std::uint64_t seed : {1, 2}) {
      const auto r = oracle::check_lame(dim, seed);
      dense = std::max(dense, r.value);
      dense_ok = dense_ok && r.passed;
    }
  }
  double wl1 = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) wl1 = std::max(wl1, decompose_velocity(manufactured(64, seed)).w_equation_residual);
  {
    Scenario sc;
    sc.kind = ScenarioKind::manufactured;
    sc.amplitude = 0.35;
    const State s3 = make_scenario(sc, GridSpec::cube(3, 32), params(0.05, 0.01));
    wl1 = std::max(wl1, decompose_velocity(s3).w_equation_residual);
  }
  const bool ok = worst_res <= 1e-10 && dense_ok && dense <= 1e-10 && wl1 <= 1e-6;
  return {ok, fmt("residual %.2e (tol 1e-10), dense match %.2e (tol 1e-10), w-equation %.2e (tol 1e-6)", worst_res,
                  dense, wl1)};
}

Outcome c9_temporal() {
  Scenario sc;
  sc.kind = ScenarioKind::acoustic;
  sc.amplitude = 0.01;
  const State s0 = make_scenario(sc, GridSpec::cube(2, 32), params(0.01, 0.0));
  const double T = 0.2;
  std::vector<State> finals;
  for (int steps : {50, 100, 200}) {
    State s = s0;
    double min_p = s.p.min();
    for (int i = 0; i < steps; ++i) {
      StepResult r = step(s, T / steps);
      min_p = std::min(min_p, r.min_p_preclip);
      s = std::move(r.state);
    }
    finals.push_back(s);
    Trajectory tr;
    tr.min_theta_seen = temperature(s).min();
    tr.min_p_preclip_seen = min_p;
    tr.final_state = s;
    log_run(fmt("acoustic %d steps", steps), tr);
  }
  auto diff = [](const State& a, const State& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rho.size(); ++i) {
      m = std::max(m, std::abs(a.rho[i] - b.rho[i]));
      m = std::max(m, std::abs(a.p[i] - b.p[i]));
      for (int c = 0; c < a.m.components(); ++c) m = std::max(m, std::abs(a.m[c][i] - b.m[c][i]));
    }
    return m;
  };
  const double e1 = diff(finals[0], finals[1]), e2 = diff(finals[1], finals[2]);
  const double order = std::log2(e1 / e2);
  const double mass = std::abs(integrate(finals[2].rho) - integrate(s0.rho)) / integrate(s0.rho);
  return {std::abs(order - 3.0) <= 0.3 && mass <= 1e-10,
          fmt("order %.3f (3.0 +- 0.3) from differences %.3e, %.3e; mass change %.1e", order, e1, e2, mass)};
}

Outcome c10_blowup_monitor() {
  Scenario sc;
  sc.kind = ScenarioKind::gaussian_bump_vacuum;
  sc.background = 1e-6;
  sc.inflow = 20.0;
  const State s0 = make_scenario(sc, GridSpec::cube(2, 64), params(1e-5, 0.0));
  RunConfig rc;
  rc.t_end = 1.0;
  rc.dt_min = 1e-9;
  rc.blowup_factor = 50.0;
  rc.output_every = 1;
  rc.diagnostics.with_residuals = false;
  const Trajectory tr = run(s0, rc);
  log_run("gaussian bump", tr);
  std::size_t best = 0, cur = 0;
  for (std::size_t i = 1; i < tr.records.size(); ++i) {
    cur = tr.records[i].M > tr.records[i - 1].M ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  const bool verdict_ok = tr.verdict == Verdict::suspected_blowup || tr.verdict == Verdict::dt_collapse;
  const double ratio = tr.records.back().M / tr.M0;
  return {verdict_ok && best >= 10,
          fmt("verdict %s at t=%.3e after %llu steps; longest increasing M run %zu records; M/M0 = %.1f",
              std::string(to_string(tr.verdict)).c_str(), tr.t_final, static_cast<unsigned long long>(tr.steps), best,
              ratio)};
}

Outcome c3_positivity() {
  double min_theta = INFINITY, min_p = INFINITY, budget = 0.0;
  std::string worst;
  for (const auto& r : g_runs) {
    if (r.min_theta < min_theta) worst = r.name;
    min_theta = std::min(min_theta, r.min_theta);
    min_p = std::min(min_p, r.min_p_preclip);
    budget = std::max(budget, r.clip_budget_rel);
  }
  const bool ok = min_theta >= -1e-10 && min_p >= -1e-10 && budget < 1e-12;
  return {ok, fmt("%zu runs: min theta %.3e, min P pre-clip %.3e (tol -1e-10), clip budget %.1e (< 1e-12)",
                  g_runs.size(), min_theta, min_p, budget)};
}

Outcome c11_determinism(const fs::path& work) {
  auto once = [&](const std::string& name) {
    app::Config cfg = app::parse_config("", {"run.t_end=0.1", "grid.n=32"});
    cfg.output_dir = work / name;
    fs::remove_all(cfg.output_dir);
    std::ostringstream log;
    app::run_simulation(cfg, log);
    std::ifstream in(cfg.output_dir / "diagnostics.ndjson", std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string a = once("det_a"), b = once("det_b");
  return {!a.empty() && a == b, fmt("%zu bytes, identical: %s", a.size(), a == b ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"cnslab acceptance criteria"};
  std::string workdir = (fs::temp_directory_path() / "cnslab_acceptance").string();
  cli.add_option("--workdir", workdir, "scratch directory for run outputs");
  CLI11_PARSE(cli, argc, argv);
  fs::create_directories(workdir);

  struct Row {
    int id;
    std::string name;
    Outcome out;
    double secs;
  };
  std::vector<Row> rows;
  auto record = [&](int id, const std::string& name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    rows.push_back({id, name, o, seconds_since(t0)});
    std::cerr << "  criterion " << id << " done in " << fmt("%.1f", rows.back().secs) << " s\n";
  };

  record(1, "operator oracles", c1_operators);
  record(2, "conservation", c2_conservation);
  record(4, "momentum identity", c4_momentum);
  record(5, "energy law", c5_energy_law);
  record(6, "weighted-energy coefficient", c6_coefficient);
  record(7, "pressure path formula", c7_pressure_path);
  record(8, "Lame solver", c8_lame);
  record(9, "temporal convergence", c9_temporal);
  record(10, "blowup monitoring", c10_blowup_monitor);
  record(3, "positivity", c3_positivity);
  record(11, "determinism", [&] { return c11_determinism(workdir); });

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& r : rows) {
    std::cout << (r.out.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": " << r.out.detail << '\n';
    failed += r.out.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all 11 criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
