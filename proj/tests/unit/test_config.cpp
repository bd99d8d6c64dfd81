#include <doctest.h>

#include <filesystem>

#include "cnslab/app/config.hpp"

using namespace cnslab;
using namespace cnslab::app;

TEST_CASE("defaults") {
  const Config c = parse_config("", {});
  CHECK(c.grid.dim == 2);
  CHECK(c.grid.n == 64);
  CHECK(c.params.mu == 0.01);
  CHECK(c.scenario.kind == ScenarioKind::shear);
  CHECK(c.run.t_end == 0.5);
  CHECK(c.tracers.count == 16);
  CHECK(c.seed == 1);
  CHECK(c.warnings.empty());
}

TEST_CASE("sections, overrides and seed precedence") {
  const std::string text =
      "seed = 5\n"
      "[grid]\n"
      "dim = 3\n"
      "n = 16\n"
      "length = 2.0\n"
      "[physics]\n"
      "mu = 0.2\n"
      "[scenario]\n"
      "kind = acoustic\n"
      "[tracers]\n"
      "count = 8\n";
  const Config c = parse_config(text, {"physics.lambda=0.01", "run.cfl=0.3"}, 9);
  CHECK(c.grid.dim == 3);
  CHECK(c.grid.n == 16);
  CHECK(c.grid.length[2] == 2.0);
  CHECK(c.params.mu == 0.2);
  CHECK(c.params.lambda == 0.01);
  CHECK(c.run.cfl == 0.3);
  CHECK(c.scenario.kind == ScenarioKind::acoustic);
  CHECK(c.seed == 9);
  CHECK(c.scenario.seed == 9);
  const Config d = parse_config(text, {});
  CHECK(d.seed == 5);
}

TEST_CASE("invalid input raises ConfigError") {
  CHECK_THROWS_AS(parse_config("[grid]\nbogus = 1\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nn = twelve\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid]\nn = 12\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("[physics]\nmu = 0\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("[physics]\nmu = 1\nlambda = -1\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nkind = tornado\n", {}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"run.cfl"}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"=3"}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"monitors.log_q=3"}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"tracers.count=5"}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"run.snapshot_every=0"}), ConfigError);
  CHECK_THROWS_AS(parse_config("", {"monitors.residuals=maybe"}), ConfigError);
  CHECK_THROWS_AS(parse_config("[grid\n", {}), ConfigError);
  CHECK_THROWS_AS(load_config(std::filesystem::path("/nonexistent/cnslab.ini"), {}), ConfigError);
}

TEST_CASE("3D viscosity warning") {
  const Config c = parse_config("", {"grid.dim=3", "grid.n=8", "tracers.count=8", "physics.mu=0.1", "physics.lambda=0.025"});
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("mu <= 4 lambda") != std::string::npos);
  const Config d = parse_config("", {"physics.mu=0.1", "physics.lambda=0.025"});
  CHECK(d.warnings.empty());
}

TEST_CASE("vacuum background warning") {
  const Config c = parse_config("", {"scenario.kind=gaussian_bump_vacuum", "scenario.background=0"});
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("floor activity") != std::string::npos);
}

TEST_CASE("generated reference parses back to the defaults") {
  const std::string ref = config_reference();
  CHECK(ref.find("[physics]") != std::string::npos);
  CHECK(ref.find("; ") != std::string::npos);
  const Config a = parse_config(ref, {});
  const Config b = parse_config("", {});
  CHECK(a.grid == b.grid);
  CHECK(a.params.mu == b.params.mu);
  CHECK(a.run.t_end == b.run.t_end);
  CHECK(a.monitors.log_q == b.monitors.log_q);
  CHECK(a.tracers.layout == b.tracers.layout);
  CHECK(a.output_dir == b.output_dir);
}
