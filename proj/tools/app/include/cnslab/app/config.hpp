#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnslab/scenario.hpp"
#include "cnslab/simulation.hpp"

namespace cnslab::app {

/// Invalid configuration file, key or value. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonitorConfig {
  bool estimates = true;   ///< log-gradient, Sobolev and pointwise-gradient monitors
  double log_q = 4.0;      ///< exponent for ||grad^2 u||_q in the log monitor
  bool lame = true;        ///< velocity decomposition monitors
  double lame_r = 2.0;
};

struct TracerConfig {
  int count = 16;
  std::string layout = "lattice";  ///< lattice | random
  double dt = 1e-3;
};

struct Config {
  GridSpec grid = GridSpec::cube(2, 64);
  PhysParams params;
  Scenario scenario;
  RunConfig run;
  MonitorConfig monitors;
  TracerConfig tracers;
  std::filesystem::path output_dir = "cnslab_out";
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;
};

/// Reads an INI-style file (sections [grid], [physics], [scenario], [run],
/// [monitors], [tracers], [output]; `seed` may sit at top level), then applies
/// KEY=VALUE overrides with KEY written as section.key, then the seed.
/// Unknown keys and invalid values throw ConfigError. Warnings (for example
/// mu <= 4 lambda in 3D) are collected in Config::warnings.
Config load_config(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& overrides,
                   std::optional<std::uint64_t> seed = std::nullopt);

/// Parses configuration text instead of a file.
Config parse_config(const std::string& text, const std::vector<std::string>& overrides,
                    std::optional<std::uint64_t> seed = std::nullopt);

/// Applies one section.key = value assignment.
void set_config_value(Config& cfg, const std::string& key, const std::string& value);

/// Cross-field validation; fills warnings. Throws ConfigError.
void validate(Config& cfg);

/// Every key with its default value and a one-line description, formatted
/// as an annotated configuration file.
std::string config_reference();

}  // namespace cnslab::app
