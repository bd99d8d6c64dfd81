#include "cnslab/app/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "cnslab/diagnostics.hpp"
#include "cnslab/estimates.hpp"
#include "cnslab/lame.hpp"
#include "cnslab/scenario.hpp"
#include "cnslab/snapshot_io.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab::app {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  return out;
}

void write_line(std::ofstream& out, const std::string& line, const fs::path& file) {
  out << line << '\n';
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}

TensorField isotropic(const ScalarField& s, int dim) {
  TensorField g(s.grid());
  for (int i = 0; i < dim; ++i) g(i, i) = s;
  return g;
}

std::vector<Point> make_seeds(const Config& cfg) {
  const Point box = cfg.grid.length;
  if (cfg.tracers.layout == "random") return random_seeds(cfg.grid.dim, box, cfg.tracers.count, cfg.seed);
  int per = 1;
  while ((cfg.grid.dim == 3 ? per * per * per : per * per) < cfg.tracers.count) ++per;
  return lattice_seeds(cfg.grid.dim, box, per);
}

// Writes records, monitors and snapshots as the loop produces them.
class Writer : public RunObserver {
 public:
  Writer(const Config& cfg, const fs::path& dir, bool keep)
      : cfg_(cfg),
        ndjson_path_(dir / "diagnostics.ndjson"),
        csv_path_(dir / "diagnostics.csv"),
        ndjson_(open_out(ndjson_path_)),
        csv_(open_out(csv_path_)),
        keep_(keep) {
    write_line(csv_, csv_header(), csv_path_);
    if (cfg.run.snapshot_every != 0) snaps_.emplace(dir / "snapshots");
  }

  void on_record(const DiagnosticRecord& r, const State& s) override {
    write_line(ndjson_, to_ndjson(r), ndjson_path_);
    for (const auto& line : monitor_lines(s, cfg_)) write_line(ndjson_, line, ndjson_path_);
    write_line(csv_, to_csv_row(r), csv_path_);
  }

  void on_snapshot(const State& s, std::uint64_t step) override {
    if (snaps_) snaps_->write(s, step);
    if (keep_ && (kept_.empty() || s.t > kept_.back().t)) kept_.push_back(s);
  }

  void append(const std::string& line) { write_line(ndjson_, line, ndjson_path_); }
  std::vector<State>& kept() { return kept_; }

 private:
  const Config& cfg_;
  fs::path ndjson_path_, csv_path_;
  std::ofstream ndjson_, csv_;
  std::optional<SnapshotWriter> snaps_;
  bool keep_;
  std::vector<State> kept_;
};

nlohmann::ordered_json verdict_json(const Config& cfg, const RunOutcome& o) {
  const Trajectory& tr = o.trajectory;
  nlohmann::ordered_json j;
  j["verdict"] = std::string(to_string(tr.verdict));
  j["message"] = tr.message;
  j["t_final"] = tr.t_final;
  j["steps"] = tr.steps;
  j["scenario"] = std::string(to_string(cfg.scenario.kind));

  nlohmann::ordered_json m;
  double m_max = tr.M0, t_max = 0.0;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& r : tr.records) {
    hist.push_back({r.t, r.M});
    if (r.M > m_max) {
      m_max = r.M;
      t_max = r.t;
    }
  }
  m["M0"] = tr.M0;
  m["M_final"] = tr.records.empty() ? tr.M0 : tr.records.back().M;
  m["M_max"] = m_max;
  m["t_at_M_max"] = t_max;
  m["ratio_max"] = tr.M0 > 0.0 ? m_max / tr.M0 : 0.0;
  m["history"] = std::move(hist);
  j["M_history_summary"] = std::move(m);

  nlohmann::ordered_json b;
  const double mass_f = tr.records.empty() ? tr.mass0 : tr.records.back().mass;
  const double energy_f = tr.records.empty() ? tr.energy0 : tr.records.back().total_energy;
  b["mass0"] = tr.mass0;
  b["mass_final"] = mass_f;
  b["clipped_rho_mass"] = tr.clipped_rho_mass;
  b["mass_rel_change"] = tr.mass0 > 0.0 ? (mass_f - tr.clipped_rho_mass - tr.mass0) / tr.mass0 : 0.0;
  b["energy0"] = tr.energy0;
  b["energy_final"] = energy_f;
  b["energy_rel_change"] = tr.energy0 != 0.0 ? (energy_f - tr.energy0) / std::abs(tr.energy0) : 0.0;
  b["clipped_p_mass"] = tr.clipped_p_mass;
  const double pmass = tr.final_state ? integrate(tr.final_state->p) : 0.0;
  b["clip_budget_rel"] = pmass > 0.0 ? tr.clipped_p_mass / pmass : 0.0;
  j["conservation_budget"] = std::move(b);

  nlohmann::ordered_json pos;
  pos["min_theta"] = tr.min_theta_seen;
  pos["min_p_preclip"] = tr.min_p_preclip_seen;
  j["positivity"] = std::move(pos);

  if (o.tracers) {
    nlohmann::ordered_json t;
    t["max_rel_error"] = o.tracers->max_rel_error;
    t["checked"] = o.tracers->checked;
    t["excluded_vacuum"] = o.tracers->excluded_vacuum;
    t["rhs_nonnegative"] = o.tracers->rhs_nonnegative;
    j["pressure_formula"] = std::move(t);
  }
  if (o.gronwall_constant) j["gronwall_constant"] = *o.gronwall_constant;
  j["warnings"] = cfg.warnings;
  return j;
}

// Run-time fields (dt, pre-clip minima, clip budget) cannot be recovered from
// a snapshot; take them from the run's own records when they are available.
std::map<std::uint64_t, DiagnosticRecord> run_ledger(const fs::path& run_dir) {
  std::map<std::uint64_t, DiagnosticRecord> out;
  std::ifstream in(run_dir / "diagnostics.ndjson");
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"type\":\"diagnostic\"") == std::string::npos) continue;
    try {
      const DiagnosticRecord r = record_from_ndjson(line);
      out[r.step] = r;
    } catch (const std::exception&) {
      break;  // a truncated tail ends the usable ledger
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> monitor_lines(const State& s, const Config& cfg) {
  std::vector<std::string> out;
  const double t = s.t;
  if (cfg.monitors.estimates) {
    const VectorField u = velocity(s);
    out.push_back(to_ndjson(log_estimate_monitor(u, cfg.monitors.log_q), t));

    InequalityReport sr = sobolev_ratio(s.rho);
    sr.name = "sobolev_l6_rho";
    out.push_back(to_ndjson(sr, t));
    InequalityReport sp = sobolev_ratio(s.p);
    sp.name = "sobolev_l6_p";
    out.push_back(to_ndjson(sp, t));

    InequalityReport pg;
    pg.name = "pointwise_gradient";
    pg.lhs = pointwise_gradient_inequality(u);
    const double gu = lp_norm(jacobian(u), INFINITY);
    pg.components = {{"grad_u_inf", gu}, {"spectral", spectral_gradient_violation(u)}};
    pg.rhs = gu;
    pg.ratio = gu > 0.0 ? pg.lhs / gu : 0.0;
    pg.constant = pg.ratio;
    out.push_back(to_ndjson(pg, t));

    InequalityReport lc;
    lc.name = "weighted_energy_coefficient";
    lc.lhs = lemma31_coefficient(s.params.mu, s.params.lambda, 6.0);
    lc.components = {{"mu", s.params.mu}, {"lambda", s.params.lambda}, {"q", 6.0}};
    lc.rhs = 6.0 * (s.params.mu - 4.0 * s.params.lambda);
    lc.ratio = lc.rhs != 0.0 ? lc.lhs / lc.rhs : 0.0;
    lc.constant = lc.ratio;
    out.push_back(to_ndjson(lc, t));
  }
  if (cfg.monitors.lame) {
    const VelocityDecomposition dec = decompose_velocity(s);
    InequalityReport dr;
    dr.name = "velocity_decomposition";
    dr.lhs = dec.w_equation_residual;
    dr.components = {{"lame_residual", dec.lame_residual}, {"v_l2", lp_norm(dec.v, 2.0)}, {"w_l2", lp_norm(dec.w, 2.0)}};
    out.push_back(to_ndjson(dr, t));

    ScalarField pc = s.p;
    pc += -mean(s.p);
    const LameSolution sol = solve_lame(gradient(pc) * -1.0, s.params);
    const LameEstimateReport lr = estimate_b6_monitor(sol, isotropic(pc * -1.0, s.grid().dim), cfg.monitors.lame_r,
                                                      cfg.monitors.log_q);
    out.push_back(to_ndjson(lr.gradient_lr, t));
    out.push_back(to_ndjson(lr.log_bound, t));
  }
  return out;
}

RunOutcome run_simulation(const Config& cfg, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  for (const auto& w : cfg.warnings) log << "cnslab: warning: " << w << '\n';

  State initial;
  try {
    initial = make_scenario(cfg.scenario, cfg.grid, cfg.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const bool tracers = cfg.tracers.count > 0;
  Writer writer(cfg, cfg.output_dir, tracers);
  RunOutcome out;
  out.trajectory = run(initial, cfg.run, &writer);
  const Trajectory& tr = out.trajectory;

  if (tr.records.size() >= 3) {
    const GronwallLedger ledger = GronwallLedger::from_records(tr.records);
    const double c = gronwall_fit(ledger);
    out.gronwall_constant = c;
    InequalityReport g;
    g.name = "gronwall_fit";
    g.lhs = c;
    g.components = {{"samples", static_cast<double>(ledger.size())}, {"q_tilde", cfg.run.diagnostics.q_tilde}};
    g.constant = c;
    writer.append(to_ndjson(g, tr.t_final));
  }

  {
    const fs::path file = cfg.output_dir / "tracers.csv";
    std::ofstream csv = open_out(file);
    std::vector<State>& kept = writer.kept();
    if (tracers && kept.size() >= 2 && tr.verdict != Verdict::nonfinite_abort) {
      const FieldSeries series(kept);
      const std::vector<Point> seeds = make_seeds(cfg);
      AdvectOptions opt;
      opt.t0 = series.t_begin();
      opt.t1 = series.t_end();
      opt.dt = cfg.tracers.dt;
      opt.vacuum_threshold = cfg.params.vacuum_threshold;
      const TracerSet set = advect(series, seeds, opt);
      out.tracers = pressure_formula_check(set);
      write_tracers_csv(csv, set, *out.tracers);
    } else {
      write_tracers_csv(csv, TracerSet{}, PressureFormulaReport{});
    }
    if (!csv) throw IoError("write failed for " + file.string());
  }

  {
    const fs::path file = cfg.output_dir / "verdict.json";
    std::ofstream v = open_out(file);
    v << verdict_json(cfg, out).dump(2) << '\n';
    if (!v) throw IoError("write failed for " + file.string());
  }

  log << "cnslab: " << to_string(tr.verdict) << " at t = " << tr.t_final << " after " << tr.steps << " steps";
  if (!tr.message.empty()) log << " (" << tr.message << ")";
  log << '\n';
  out.exit_code = tr.verdict == Verdict::nonfinite_abort ? kExitNonFinite : kExitOk;
  return out;
}

int analyze(const fs::path& dir, const Config& cfg, const fs::path& out_dir, std::ostream& log) {
  fs::path snap_dir = dir;
  if (!fs::exists(snap_dir / "manifest.json") && fs::exists(dir / "snapshots" / "manifest.json"))
    snap_dir = dir / "snapshots";
  const SnapshotManifest m = read_manifest(snap_dir);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const fs::path nd_path = out_dir / "analysis.ndjson";
  const fs::path csv_path = out_dir / "analysis.csv";
  std::ofstream nd = open_out(nd_path);
  std::ofstream csv = open_out(csv_path);
  write_line(csv, csv_header(), csv_path);

  const auto ledger = run_ledger(snap_dir.filename() == "snapshots" ? snap_dir.parent_path() : snap_dir);
  Config local = cfg;
  local.params = m.params;
  std::size_t done = 0, skipped = 0;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const SnapshotEntry& e = m.entries[i];
    bool missing = false;
    for (const auto& f : e.files)
      if (!fs::exists(snap_dir / f)) missing = true;
    if (missing) {
      nlohmann::ordered_json j;
      j["type"] = "skipped";
      j["step"] = e.step;
      j["t"] = e.t;
      j["reason"] = "missing snapshot file";
      write_line(nd, j.dump(), nd_path);
      ++skipped;
      continue;
    }
    const State s = load_snapshot(snap_dir, m, i);
    DiagnosticRecord r = evaluate_diagnostics(s, local.run.diagnostics);
    r.step = e.step;
    if (auto it = ledger.find(e.step); it != ledger.end()) {
      r.dt = it->second.dt;
      r.min_rho_preclip = it->second.min_rho_preclip;
      r.min_p_preclip = it->second.min_p_preclip;
      r.clip_budget = it->second.clip_budget;
    } else {
      r.min_rho_preclip = r.min_rho;
      r.min_p_preclip = r.min_p;
    }
    write_line(nd, to_ndjson(r), nd_path);
    for (const auto& line : monitor_lines(s, local)) write_line(nd, line, nd_path);
    write_line(csv, to_csv_row(r), csv_path);
    ++done;
  }
  log << "cnslab: analyzed " << done << " snapshot(s), skipped " << skipped << '\n';
  return kExitOk;
}

int verify(std::ostream& out, const oracle::RhsImpl& impl) {
  const auto results = oracle::run_verification_suite(impl);
  bool ok = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << r.value << " tol=" << r.tolerance;
    if (!r.detail.empty()) out << " [" << r.detail << "]";
    out << '\n';
    ok = ok && r.passed;
  }
  out << (ok ? "verify: all checks passed" : "verify: some checks failed") << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace cnslab::app
