#include "cnslab/app/config.hpp"

#include <charconv>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cnslab::app {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("value for " + key + " is not a number: '" + v + "'");
  }
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("value for " + key + " is not an integer: '" + v + "'");
  return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  const long long n = to_int(key, v);
  if (n < 0) throw ConfigError(key + " must be non-negative");
  return static_cast<std::uint64_t>(n);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("value for " + key + " is not a boolean: '" + v + "'");
}

struct Key {
  const char* name;
  const char* fallback;
  const char* help;
  std::function<void(Config&, const std::string&, const std::string&)> set;
};

#define DBL(field) [](Config& c, const std::string& k, const std::string& v) { c.field = to_double(k, v); }
#define CNT(field) [](Config& c, const std::string& k, const std::string& v) { c.field = to_count(k, v); }
#define BOOL(field) [](Config& c, const std::string& k, const std::string& v) { c.field = to_bool(k, v); }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"seed", "1", "seed for every random choice (scenario coefficients, random tracers)",
       [](Config& c, const std::string& k, const std::string& v) { c.seed = to_count(k, v); }},
      {"grid.dim", "2", "spatial dimension, 2 or 3",
       [](Config& c, const std::string& k, const std::string& v) { c.grid.dim = static_cast<int>(to_int(k, v)); }},
      {"grid.n", "64", "nodes per axis, a power of two >= 8",
       [](Config& c, const std::string& k, const std::string& v) { c.grid.n = static_cast<int>(to_int(k, v)); }},
      {"grid.length", "1", "box side on every axis",
       [](Config& c, const std::string& k, const std::string& v) { c.grid.length.fill(to_double(k, v)); }},
      {"physics.mu", "0.01", "shear viscosity, > 0", DBL(params.mu)},
      {"physics.lambda", "0", "bulk viscosity coefficient, 2 mu + 3 lambda >= 0", DBL(params.lambda)},
      {"physics.rho_floor", "1e-10", "divisor floor for u = m / rho", DBL(params.rho_floor)},
      {"physics.vacuum_threshold", "1e-8", "rho at or below this counts as vacuum", DBL(params.vacuum_threshold)},
      {"scenario.kind", "shear",
       "uniform | shear | acoustic | gaussian_bump_vacuum | nonvacuum_farfield | manufactured",
       [](Config& c, const std::string& k, const std::string& v) {
         const auto kind = parse_scenario_kind(v);
         if (!kind) throw ConfigError("unknown value for " + k + ": '" + v + "'");
         c.scenario.kind = *kind;
       }},
      {"scenario.rho0", "1", "reference density", DBL(scenario.rho0)},
      {"scenario.p0", "1", "reference pressure", DBL(scenario.p0)},
      {"scenario.amplitude", "0.1", "perturbation amplitude (shear, acoustic, manufactured)", DBL(scenario.amplitude)},
      {"scenario.velocity_x", "0", "uniform velocity, x", DBL(scenario.velocity[0])},
      {"scenario.velocity_y", "0", "uniform velocity, y", DBL(scenario.velocity[1])},
      {"scenario.velocity_z", "0", "uniform velocity, z", DBL(scenario.velocity[2])},
      {"scenario.background", "1e-6", "far-field density of the bump scenarios", DBL(scenario.background)},
      {"scenario.bump_amplitude", "1", "peak density above the background", DBL(scenario.bump_amplitude)},
      {"scenario.width", "0.1", "Gaussian width", DBL(scenario.width)},
      {"scenario.cutoff_radius", "0.4", "radius beyond which the bump equals the background",
       DBL(scenario.cutoff_radius)},
      {"scenario.inflow", "1", "inward velocity scale of the bump", DBL(scenario.inflow)},
      {"scenario.pressure_ratio", "1", "P0 = pressure_ratio * rho0 in the bump scenarios", DBL(scenario.pressure_ratio)},
      {"scenario.center_x", "0.5", "bump center as a box fraction, x", DBL(scenario.center[0])},
      {"scenario.center_y", "0.5", "bump center as a box fraction, y", DBL(scenario.center[1])},
      {"scenario.center_z", "0.5", "bump center as a box fraction, z", DBL(scenario.center[2])},
      {"scenario.max_mode", "3", "highest mode of the manufactured polynomials",
       [](Config& c, const std::string& k, const std::string& v) {
         c.scenario.max_mode = static_cast<int>(to_int(k, v));
       }},
      {"run.t_end", "0.5", "final time", DBL(run.t_end)},
      {"run.cfl", "0.4", "CFL number in (0, 1]", DBL(run.cfl)},
      {"run.dt_min", "1e-9", "time step below which the run ends with dt_collapse", DBL(run.dt_min)},
      {"run.blowup_factor", "50", "suspected_blowup once M(t) >= factor * M(0)", DBL(run.blowup_factor)},
      {"run.output_every", "10", "steps between diagnostic records", CNT(run.output_every)},
      {"run.snapshot_every", "10", "steps between snapshots, 0 disables them", CNT(run.snapshot_every)},
      {"run.max_steps", "0", "step budget, 0 for none", CNT(run.max_steps)},
      {"monitors.q_tilde", "4", "exponent of the density and pressure gradient norms", DBL(run.diagnostics.q_tilde)},
      {"monitors.residuals", "true", "evaluate the momentum and energy identity residuals",
       BOOL(run.diagnostics.with_residuals)},
      {"monitors.estimates", "true", "emit inequality monitor lines with every record", BOOL(monitors.estimates)},
      {"monitors.log_q", "4", "exponent of ||grad^2 u||_q in the log-gradient monitor, in (3, 6]",
       DBL(monitors.log_q)},
      {"monitors.lame", "true", "emit velocity decomposition monitors", BOOL(monitors.lame)},
      {"monitors.lame_r", "2", "exponent r of the Lame gradient ratio, > 1", DBL(monitors.lame_r)},
      {"tracers.count", "16", "number of tracers, 0 disables them",
       [](Config& c, const std::string& k, const std::string& v) { c.tracers.count = static_cast<int>(to_int(k, v)); }},
      {"tracers.layout", "lattice", "lattice | random",
       [](Config& c, const std::string& k, const std::string& v) {
         if (v != "lattice" && v != "random") throw ConfigError("unknown value for " + k + ": '" + v + "'");
         c.tracers.layout = v;
       }},
      {"tracers.dt", "1e-3", "tracer RK4 step", DBL(tracers.dt)},
      {"output.dir", "cnslab_out", "output directory",
       [](Config& c, const std::string&, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

#undef DBL
#undef CNT
#undef BOOL

Config defaults() {
  Config c;
  for (const Key& k : keys()) k.set(c, k.name, k.fallback);
  return c;
}

void apply_tree(Config& cfg, const pt::ptree& tree) {
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      set_config_value(cfg, name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) throw ConfigError("nested section under [" + name + "] is not supported");
      set_config_value(cfg, name + "." + key, leaf.data());
    }
  }
}

Config finish(Config cfg, const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed) {
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like section.key=value: '" + o + "'");
    set_config_value(cfg, o.substr(0, eq), o.substr(eq + 1));
  }
  if (seed) cfg.seed = *seed;
  validate(cfg);
  return cfg;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void set_config_value(Config& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key);
  for (const Key& entry : keys())
    if (k == entry.name) {
      entry.set(cfg, k, trim(value));
      return;
    }
  throw ConfigError("unknown configuration key '" + k + "'");
}

void validate(Config& cfg) {
  cfg.warnings.clear();
  try {
    cfg.grid.validate();
    cfg.params.validate();
    cfg.run.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.monitors.log_q > 3.0 && cfg.monitors.log_q <= 6.0)) throw ConfigError("monitors.log_q must lie in (3, 6]");
  if (!(cfg.monitors.lame_r > 1.0)) throw ConfigError("monitors.lame_r must exceed 1");
  if (cfg.tracers.count < 0) throw ConfigError("tracers.count must be non-negative");
  if (!(cfg.tracers.dt > 0.0)) throw ConfigError("tracers.dt must be positive");
  if (cfg.tracers.count > 0 && cfg.tracers.layout == "lattice") {
    int per = 1;
    while ((cfg.grid.dim == 3 ? per * per * per : per * per) < cfg.tracers.count) ++per;
    if ((cfg.grid.dim == 3 ? per * per * per : per * per) != cfg.tracers.count)
      throw ConfigError("tracers.count must be a perfect square (2D) or cube (3D) for the lattice layout");
  }
  if (cfg.tracers.count > 0 && cfg.run.snapshot_every == 0)
    throw ConfigError("tracers need snapshots: set run.snapshot_every >= 1 or tracers.count = 0");
  cfg.scenario.seed = cfg.seed;
  if (cfg.grid.dim == 3 && !cfg.params.satisfies_mu_gt_4lambda())
    cfg.warnings.push_back("mu <= 4 lambda in 3D: the blowup criterion is only established for mu > 4 lambda");
  if (expects_floor_activity(cfg.scenario))
    cfg.warnings.push_back("exact-vacuum background: expect floor activity");
  if (cfg.output_dir.empty()) throw ConfigError("output.dir must not be empty");
}

Config parse_config(const std::string& text, const std::vector<std::string>& overrides,
                    std::optional<std::uint64_t> seed) {
  Config cfg = defaults();
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot parse configuration: ") + e.what());
  }
  apply_tree(cfg, tree);
  return finish(std::move(cfg), overrides, seed);
}

Config load_config(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& overrides,
                   std::optional<std::uint64_t> seed) {
  Config cfg = defaults();
  if (file) {
    pt::ptree tree;
    try {
      pt::read_ini(file->string(), tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string("cannot read configuration: ") + e.what());
    }
    apply_tree(cfg, tree);
  }
  return finish(std::move(cfg), overrides, seed);
}

std::string config_reference() {
  std::ostringstream os;
  std::string section;
  for (const Key& k : keys()) {
    const std::string name = k.name;
    const auto dot = name.find('.');
    const std::string sec = dot == std::string::npos ? "" : name.substr(0, dot);
    const std::string leaf = dot == std::string::npos ? name : name.substr(dot + 1);
    if (sec != section) {
      os << "\n[" << sec << "]\n";
      section = sec;
    }
    os << "; " << k.help << "\n" << leaf << " = " << k.fallback << "\n";
  }
  return os.str();
}

}  // namespace cnslab::app
