#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qroute/commands.hpp"

using namespace qroute;

TEST_CASE("classical") {
  RunConfig cfg;
  std::ostringstream out;
  std::ostringstream log;
  CHECK(cli::cmd_classical(cfg, 0.2, out, log) == cli::kExitOk);
  CHECK(nlohmann::json::parse(out.str())["valid"] == true);
  CHECK(log.str().find("VALID") != std::string::npos);

  std::ostringstream zero;
  CHECK(cli::cmd_classical(cfg, 0.0, zero, log) == cli::kExitOk);
  const auto j = nlohmann::json::parse(zero.str());
  CHECK(j["upper"] == j["a_grid"]);
}

TEST_CASE("quantum output feeds the simulator") {
  RunConfig cfg;
  cfg.quantum.restarts = 3;
  cfg.sim_pairs = 20000;
  cfg.sim_warmup = 2000;
  std::ostringstream out;
  std::ostringstream log;
  REQUIRE(cli::cmd_quantum(cfg, 0.2, out, log) == cli::kExitOk);
  const PolicySpec pol = parse_policy(out.str());
  CHECK(pol.kind == PolicyKind::quantum);
  std::ostringstream sim;
  CHECK(cli::cmd_simulate(cfg, pol, sim, log) == cli::kExitOk);
  CHECK(sim.str().rfind("policy,", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli::exit_code_for(ConfigError("x")) == cli::kExitConfig);
  CHECK(cli::exit_code_for(std::invalid_argument("x")) == cli::kExitConfig);
  CHECK(cli::exit_code_for(std::runtime_error("x")) == cli::kExitFailure);
  RunConfig cfg;
  cfg.quantum.restarts = 0;
  std::ostringstream out;
  std::ostringstream log;
  try {
    cli::cmd_quantum(cfg, 0.2, out, log);
    FAIL("expected an exception");
  } catch (const std::exception& e) {
    CHECK(cli::exit_code_for(e) == cli::kExitConfig);
  }
}

TEST_CASE("throughput table") {
  RunConfig cfg;
  cfg.format = OutputFormat::json;
  std::ostringstream out;
  std::ostringstream log;
  CHECK(cli::cmd_throughput(cfg, {0.0, 0.2, 0.5, 1.0}, out, log) == cli::kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][0]["throughput"].get<double>() == doctest::Approx(0.2 / 1.8));
  CHECK_THROWS_AS(cli::cmd_throughput(cfg, {1.5}, out, log), ConfigError);
}

TEST_CASE("oracle") {
  RunConfig cfg;
  std::ostringstream out;
  std::ostringstream log;
  CHECK(cli::cmd_oracle(cfg, 0.2, out, log) == cli::kExitOk);
  CHECK(nlohmann::json::parse(out.str())["n_samples"] == 100000);
}
