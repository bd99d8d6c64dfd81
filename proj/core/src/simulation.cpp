#include "cnslab/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cnslab/dynamics.hpp"
#include "cnslab/spectral.hpp"

namespace cnslab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::completed: return "completed";
    case Verdict::suspected_blowup: return "suspected_blowup";
    case Verdict::dt_collapse: return "dt_collapse";
    case Verdict::nonfinite_abort: return "nonfinite_abort";
  }
  return "unknown";
}

void RunConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("run: t_end must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("run: cfl must lie in (0, 1]");
  if (!(dt_min >= 0.0)) throw std::invalid_argument("run: dt_min must be non-negative");
  if (!(blowup_factor > 0.0)) throw std::invalid_argument("run: blowup_factor must be positive");
  if (output_every == 0) throw std::invalid_argument("run: output_every must be at least 1");
  if (!(diagnostics.q_tilde >= 1.0)) throw std::invalid_argument("run: q_tilde must be >= 1");
}

namespace {

class Loop {
 public:
  Loop(const RunConfig& rc, RunObserver* obs, Trajectory& tr) : rc_(rc), obs_(obs), tr_(tr) {}

  void record(const State& s, std::uint64_t step, double dt, const StepResult* last) {
    DiagnosticRecord r = evaluate_diagnostics(s, rc_.diagnostics);
    r.step = step;
    r.dt = dt;
    if (last) {
      r.min_rho_preclip = last->min_rho_preclip;
      r.min_p_preclip = last->min_p_preclip;
    } else {
      r.min_rho_preclip = r.min_rho;
      r.min_p_preclip = r.min_p;
    }
    r.clip_budget = tr_.clipped_rho_mass + tr_.clipped_p_mass;
    tr_.min_theta_seen = std::min(tr_.min_theta_seen, r.min_theta);
    tr_.records.push_back(r);
    last_recorded_ = step;
    if (obs_) obs_->on_record(tr_.records.back(), s);
  }

  void snapshot(const State& s, std::uint64_t step) {
    if (rc_.snapshot_every == 0) return;
    if (!tr_.snapshot_steps.empty() && tr_.snapshot_steps.back() == step) return;
    tr_.snapshot_steps.push_back(step);
    if (rc_.keep_snapshots) tr_.snapshots.push_back(s);
    if (obs_) obs_->on_snapshot(s, step);
  }

  std::uint64_t last_recorded() const { return last_recorded_; }

 private:
  const RunConfig& rc_;
  RunObserver* obs_;
  Trajectory& tr_;
  std::uint64_t last_recorded_ = 0;
};

}  // namespace

Trajectory run(const State& initial, const RunConfig& rc, RunObserver* observer) {
  rc.validate();
  initial.validate();

  Trajectory tr;
  Loop loop(rc, observer, tr);
  State s = initial;
  tr.M0 = blowup_monitor(s);
  tr.mass0 = integrate(s.rho);
  tr.energy0 = total_energy(s);
  tr.min_p_preclip_seen = s.p.min();
  tr.min_theta_seen = std::numeric_limits<double>::infinity();

  std::uint64_t n = 0;
  double last_dt = 0.0;
  StepResult last;
  bool have_last = false;
  const double threshold = rc.blowup_factor * tr.M0;

  auto finish = [&](Verdict v, std::string msg) {
    tr.verdict = v;
    tr.message = std::move(msg);
    tr.t_final = s.t;
    tr.steps = n;
    if (v != Verdict::nonfinite_abort && (tr.records.empty() || loop.last_recorded() != n))
      loop.record(s, n, last_dt, have_last ? &last : nullptr);
    loop.snapshot(s, n);
    tr.final_state = s;
  };

  try {
    if (!s.all_finite()) throw NonFiniteError("initial state is not finite");
    loop.record(s, 0, 0.0, nullptr);
    loop.snapshot(s, 0);

    while (true) {
      const double remaining = rc.t_end - s.t;
      if (remaining <= 1e-14 * std::max(1.0, rc.t_end)) {
        finish(Verdict::completed, "reached t_end");
        break;
      }
      if (rc.max_steps != 0 && n >= rc.max_steps) {
        finish(Verdict::completed, "reached max_steps");
        break;
      }
      const double dt_cfl = compute_dt(s, rc.cfl);
      if (!(dt_cfl >= rc.dt_min)) {
        finish(Verdict::dt_collapse, "time step " + std::to_string(dt_cfl) + " below dt_min");
        break;
      }
      const double dt = std::min(dt_cfl, remaining);
      last = step(s, dt);
      have_last = true;
      last_dt = dt;
      ++n;
      s = last.state;
      tr.clipped_rho_mass += last.clipped_rho_mass;
      tr.clipped_p_mass += last.clipped_p_mass;
      tr.min_p_preclip_seen = std::min(tr.min_p_preclip_seen, last.min_p_preclip);
      tr.min_theta_seen = std::min(tr.min_theta_seen, last.min_theta_preclip);

      if (n % rc.output_every == 0) loop.record(s, n, dt, &last);
      if (rc.snapshot_every != 0 && n % rc.snapshot_every == 0) loop.snapshot(s, n);

      const double M = blowup_monitor(s);
      if (!std::isfinite(M)) throw NonFiniteError("blowup monitor is not finite");
      if (rc.blowup_factor <= 1.0 || M >= threshold) {
        finish(Verdict::suspected_blowup, "M reached " + std::to_string(M) + " from M0 = " + std::to_string(tr.M0));
        break;
      }
    }
  } catch (const NonFiniteError& e) {
    tr.verdict = Verdict::nonfinite_abort;
    tr.message = e.what();
    tr.t_final = s.t;
    tr.steps = n;
    tr.final_state = s;
  }
  return tr;
}

}  // namespace cnslab
