#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnslab/diagnostics.hpp"
#include "cnslab/state.hpp"

namespace cnslab {

enum class Verdict { completed, suspected_blowup, dt_collapse, nonfinite_abort };

std::string_view to_string(Verdict v);

struct RunConfig {
  double t_end = 1.0;
  double cfl = 0.4;
  double dt_min = 1e-9;
  /// suspected_blowup once M(t) >= blowup_factor * M(0). A factor <= 1 fires
  /// after the first step regardless of how M moved.
  double blowup_factor = 50.0;
  std::uint64_t output_every = 1;    ///< record cadence in steps (>= 1)
  std::uint64_t snapshot_every = 0;  ///< 0 disables snapshots
  std::uint64_t max_steps = 0;       ///< 0 means unlimited
  bool keep_snapshots = false;       ///< store snapshot states in the Trajectory
  DiagnosticOptions diagnostics;

  /// Throws std::invalid_argument on t_end <= 0, cfl outside (0, 1],
  /// dt_min < 0 or output_every == 0.
  void validate() const;
};

/// Hooks called from the time loop, in time order.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_record(const DiagnosticRecord&, const State&) {}
  virtual void on_snapshot(const State&, std::uint64_t /*step*/) {}
};

struct Trajectory {
  std::vector<DiagnosticRecord> records;
  std::vector<State> snapshots;  ///< filled only with keep_snapshots
  std::vector<std::uint64_t> snapshot_steps;
  Verdict verdict = Verdict::completed;
  std::string message;
  double t_final = 0.0;
  std::uint64_t steps = 0;
  double M0 = 0.0;
  double mass0 = 0.0;
  double energy0 = 0.0;
  double clipped_rho_mass = 0.0;
  double clipped_p_mass = 0.0;
  double min_theta_seen = 0.0;        ///< minimum over records and pre-clip step results
  double min_p_preclip_seen = 0.0;    ///< includes the initial state
  std::optional<State> final_state;
};

/// Evolves `initial` with SSP-RK3 under the adaptive time step until t_end or
/// a verdict. A record is taken at t = 0, every output_every steps and at
/// termination. Non-finite values end the run with nonfinite_abort instead
/// of throwing.
Trajectory run(const State& initial, const RunConfig& rc, RunObserver* observer = nullptr);

}  // namespace cnslab
