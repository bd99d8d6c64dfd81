#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnslab/app/config.hpp"
#include "cnslab/lagrangian.hpp"
#include "cnslab/oracles/checks.hpp"
#include "cnslab/simulation.hpp"

namespace cnslab::app {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNonFinite = 3, kExitIo = 4 };

/// Monitor lines ("type":"monitor") for one state, in a fixed order.
std::vector<std::string> monitor_lines(const State& s, const Config& cfg);

struct RunOutcome {
  Trajectory trajectory;  ///< snapshots are not retained
  std::optional<PressureFormulaReport> tracers;
  std::optional<double> gronwall_constant;
  int exit_code = kExitOk;
};

/// Runs the configured scenario and writes diagnostics.ndjson,
/// diagnostics.csv, snapshots/, tracers.csv and verdict.json into
/// cfg.output_dir. Throws IoError for file-system failures.
RunOutcome run_simulation(const Config& cfg, std::ostream& log);

/// Recomputes records and monitors from a snapshot directory (or a run
/// directory containing snapshots/) and writes analysis.ndjson and
/// analysis.csv into out_dir. Missing snapshot files are reported and
/// skipped. Returns an exit code.
int analyze(const std::filesystem::path& dir, const Config& cfg, const std::filesystem::path& out_dir,
            std::ostream& log);

/// Prints one PASS/FAIL line per oracle check; returns kExitFailure if any fails.
int verify(std::ostream& out, const oracle::RhsImpl& impl = rhs);

}  // namespace cnslab::app
