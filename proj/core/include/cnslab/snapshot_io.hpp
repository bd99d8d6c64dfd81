#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnslab/state.hpp"

namespace cnslab {

/// File-system or format failure while reading or writing snapshots.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SnapshotEntry {
  std::uint64_t step = 0;
  double t = 0.0;
  std::vector<std::string> files;  ///< one per field name, relative to the directory
};

/// Contents of manifest.json: grid, parameters, field names and the list of
/// stored time levels.
struct SnapshotManifest {
  GridSpec grid;
  PhysParams params;
  std::vector<std::string> fields;  ///< rho, m_x, m_y[, m_z], p
  std::vector<SnapshotEntry> entries;
};

std::vector<std::string> snapshot_field_names(int dim);

/// Writes raw little-endian float64 arrays in storage order (x slowest).
void write_field(const std::filesystem::path& file, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& file, const GridSpec& grid);

/// Appends snapshots to a directory and keeps manifest.json current; the
/// manifest is rewritten through a temporary file after every snapshot so an
/// interrupted run leaves a readable directory.
class SnapshotWriter {
 public:
  explicit SnapshotWriter(std::filesystem::path dir);
  void write(const State& s, std::uint64_t step);
  const SnapshotManifest& manifest() const { return manifest_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void flush_manifest() const;

  std::filesystem::path dir_;
  SnapshotManifest manifest_;
  bool started_ = false;
};

std::string manifest_to_json(const SnapshotManifest& m);
SnapshotManifest read_manifest(const std::filesystem::path& dir);

/// Loads one entry. Throws IoError if a file is missing or has the wrong size.
State load_snapshot(const std::filesystem::path& dir, const SnapshotManifest& m, std::size_t index);

}  // namespace cnslab
