#include "cnslab/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cnslab {
namespace fs = std::filesystem;

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

std::string step_tag(std::uint64_t step) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%08llu", static_cast<unsigned long long>(step));
  return buf.data();
}

void write_text(const fs::path& file, const std::string& text) {
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace

std::vector<std::string> snapshot_field_names(int dim) {
  std::vector<std::string> names{"rho", "m_x", "m_y"};
  if (dim == 3) names.push_back("m_z");
  names.push_back("p");
  return names;
}

void write_field(const fs::path& file, const ScalarField& f) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  for (double v : f.values()) {
    const std::uint64_t le = to_le(std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(&le), sizeof le);
  }
  if (!out) throw IoError("write failed for " + file.string());
}

ScalarField read_field(const fs::path& file, const GridSpec& grid) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::error_code ec;
  const auto bytes = fs::file_size(file, ec);
  if (ec || bytes != grid.size() * sizeof(double))
    throw IoError(file.string() + " does not hold " + std::to_string(grid.size()) + " float64 values");
  ScalarField f(grid);
  for (auto& v : f.values()) {
    std::uint64_t le = 0;
    in.read(reinterpret_cast<char*>(&le), sizeof le);
    v = std::bit_cast<double>(to_le(le));
  }
  if (!in) throw IoError("read failed for " + file.string());
  return f;
}

SnapshotWriter::SnapshotWriter(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
}

void SnapshotWriter::write(const State& s, std::uint64_t step) {
  if (!started_) {
    manifest_.grid = s.grid();
    manifest_.params = s.params;
    manifest_.fields = snapshot_field_names(s.grid().dim);
    started_ = true;
  } else if (!(s.grid() == manifest_.grid)) {
    throw IoError("snapshot grid differs from the manifest");
  }
  SnapshotEntry e;
  e.step = step;
  e.t = s.t;
  const std::string tag = step_tag(step);
  std::vector<const ScalarField*> data{&s.rho};
  for (const auto& c : s.m.comp) data.push_back(&c);
  data.push_back(&s.p);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::string name = "snap_" + tag + "_" + manifest_.fields[i] + ".bin";
    write_field(dir_ / name, *data[i]);
    e.files.push_back(name);
  }
  manifest_.entries.push_back(std::move(e));
  flush_manifest();
}

void SnapshotWriter::flush_manifest() const { write_text(dir_ / "manifest.json", manifest_to_json(manifest_)); }

std::string manifest_to_json(const SnapshotManifest& m) {
  nlohmann::ordered_json j;
  j["format"] = "float64-le";
  j["order"] = "axis-major, x slowest";
  j["dim"] = m.grid.dim;
  j["n"] = m.grid.n;
  j["box_length"] = std::vector<double>(m.grid.length.begin(), m.grid.length.begin() + m.grid.dim);
  j["mu"] = m.params.mu;
  j["lambda"] = m.params.lambda;
  j["rho_floor"] = m.params.rho_floor;
  j["vacuum_threshold"] = m.params.vacuum_threshold;
  j["fields"] = m.fields;
  auto& arr = j["snapshots"];
  arr = nlohmann::ordered_json::array();
  for (const auto& e : m.entries) {
    nlohmann::ordered_json je;
    je["step"] = e.step;
    je["t"] = e.t;
    je["files"] = e.files;
    arr.push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

SnapshotManifest read_manifest(const fs::path& dir) {
  const fs::path file = dir / "manifest.json";
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  SnapshotManifest m;
  try {
    const auto j = nlohmann::json::parse(in);
    m.grid.dim = j.at("dim").get<int>();
    m.grid.n = j.at("n").get<int>();
    const auto L = j.at("box_length").get<std::vector<double>>();
    if (static_cast<int>(L.size()) != m.grid.dim) throw IoError("box_length does not match dim");
    for (int a = 0; a < m.grid.dim; ++a) m.grid.length[a] = L[a];
    m.grid.validate();
    m.params.mu = j.at("mu").get<double>();
    m.params.lambda = j.at("lambda").get<double>();
    m.params.rho_floor = j.value("rho_floor", m.params.rho_floor);
    m.params.vacuum_threshold = j.value("vacuum_threshold", m.params.vacuum_threshold);
    m.fields = j.at("fields").get<std::vector<std::string>>();
    if (m.fields != snapshot_field_names(m.grid.dim)) throw IoError("unexpected field list in manifest");
    for (const auto& je : j.at("snapshots")) {
      SnapshotEntry e;
      e.step = je.at("step").get<std::uint64_t>();
      e.t = je.at("t").get<double>();
      e.files = je.at("files").get<std::vector<std::string>>();
      if (e.files.size() != m.fields.size()) throw IoError("snapshot entry has the wrong number of files");
      m.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed manifest " + file.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError("invalid manifest " + file.string() + ": " + e.what());
  }
  return m;
}

State load_snapshot(const fs::path& dir, const SnapshotManifest& m, std::size_t index) {
  if (index >= m.entries.size()) throw IoError("snapshot index out of range");
  const SnapshotEntry& e = m.entries[index];
  State s;
  s.t = e.t;
  s.params = m.params;
  s.rho = read_field(dir / e.files[0], m.grid);
  s.m = VectorField(m.grid);
  for (int a = 0; a < m.grid.dim; ++a) s.m[a] = read_field(dir / e.files[1 + a], m.grid);
  s.p = read_field(dir / e.files.back(), m.grid);
  return s;
}

}  // namespace cnslab
