#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnslab/app/app.hpp"
#include "cnslab/fields.hpp"
#include "cnslab/snapshot_io.hpp"

namespace fs = std::filesystem;
using namespace cnslab;

namespace {

struct CommonOptions {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "configuration file (INI sections)")->check(CLI::ExistingFile);
  cmd->add_option("--output", o.output, "output directory");
  cmd->add_option("--seed", o.seed, "seed for every random choice");
  cmd->add_option("--override", o.overrides, "section.key=value, repeatable")->take_all();
}

app::Config make_config(const CommonOptions& o) {
  std::optional<fs::path> file;
  if (!o.config.empty()) file = o.config;
  app::Config cfg = app::load_config(file, o.overrides, o.seed);
  if (!o.output.empty()) cfg.output_dir = o.output;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"cnslab: pseudo-spectral compressible Navier-Stokes laboratory"};
  cli.require_subcommand(0, 1);
  bool print_defaults = false;
  cli.add_flag("--print-defaults", print_defaults, "print the annotated default configuration and exit");

  CommonOptions run_opt, verify_opt, analyze_opt;
  std::string analyze_dir;
  CLI::App* run_cmd = cli.add_subcommand("run", "run a scenario and write diagnostics");
  add_common(run_cmd, run_opt);
  CLI::App* verify_cmd = cli.add_subcommand("verify", "run the oracle suite");
  add_common(verify_cmd, verify_opt);
  CLI::App* analyze_cmd = cli.add_subcommand("analyze", "recompute diagnostics from stored snapshots");
  add_common(analyze_cmd, analyze_opt);
  analyze_cmd->add_option("dir", analyze_dir, "run directory or snapshot directory")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : app::kExitConfig;
  }

  if (print_defaults) {
    std::cout << app::config_reference();
    return app::kExitOk;
  }
  if (cli.get_subcommands().empty()) {
    std::cerr << cli.help();
    return app::kExitConfig;
  }

  try {
    if (*run_cmd) {
      const app::Config cfg = make_config(run_opt);
      return app::run_simulation(cfg, std::cerr).exit_code;
    }
    if (*verify_cmd) {
      make_config(verify_opt);
      return app::verify(std::cout);
    }
    if (*analyze_cmd) {
      app::Config cfg = make_config(analyze_opt);
      for (const auto& w : cfg.warnings) std::cerr << "cnslab: warning: " << w << '\n';
      const fs::path out = analyze_opt.output.empty() ? fs::path(analyze_dir) / "analysis" : fs::path(analyze_opt.output);
      return app::analyze(analyze_dir, cfg, out, std::cerr);
    }
  } catch (const app::ConfigError& e) {
    std::cerr << "cnslab: config error: " << e.what() << '\n';
    return app::kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "cnslab: i/o error: " << e.what() << '\n';
    return app::kExitIo;
  } catch (const NonFiniteError& e) {
    std::cerr << "cnslab: non-finite value: " << e.what() << '\n';
    return app::kExitNonFinite;
  } catch (const std::exception& e) {
    std::cerr << "cnslab: error: " << e.what() << '\n';
    return app::kExitFailure;
  }
  return app::kExitFailure;
}
