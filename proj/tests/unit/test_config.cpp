#include <doctest.h>

#include <string>

#include "qroute/config.hpp"

using namespace qroute;

TEST_CASE("empty config reproduces the defaults") {
  for (const char* text : {"", "{}", "  \n"}) {
    const RunConfig c = parse_config(text);
    CHECK(c.lambda == 0.8);
    CHECK(c.mu == 1.0);
    CHECK(c.warmup.phi_max == 1.0);
    CHECK(c.warmup.alpha == 0.5);
    CHECK(c.classical.grid_points == 500);
    CHECK(c.classical.theta_max == 12.0);
    CHECK(c.quantum.degree == 2);
    CHECK(c.quantum.quad_order == 60);
    CHECK(c.quantum.restarts == 20);
    CHECK(c.quantum.seed == 1);
    CHECK(c.oracle_samples == 100000);
    CHECK(c.sim_pairs == 500000);
    CHECK(c.format == OutputFormat::csv);
    REQUIRE(c.p_grid.size() == 19);
    CHECK(c.p_grid.front() == doctest::Approx(0.025));
    CHECK(c.p_grid.back() == doctest::Approx(0.475));
    CHECK(c.p_grid[7] == doctest::Approx(0.2));
  }
}

TEST_CASE("values are read") {
  const RunConfig c = parse_config(R"({
    "system": {"lambda": 0.5, "mu": 2.0},
    "p_grid": [0.1, 0.2],
    "classical": {"grid_points": 100, "epsilon": 0.001},
    "quantum": {"degree": 3, "restarts": 4, "seed": 9},
    "oracle": {"n_samples": 5000},
    "sim": {"n_pairs": 1000, "warmup_discard": 100, "seed": 3},
    "output": {"format": "json", "path": "out.json"}
  })");
  CHECK(c.lambda == 0.5);
  CHECK(c.mu == 2.0);
  CHECK(c.p_grid == std::vector<double>{0.1, 0.2});
  CHECK(c.classical.grid_points == 100);
  CHECK(c.classical.epsilon == 0.001);
  CHECK(c.quantum.degree == 3);
  CHECK(c.quantum.seed == 9);
  CHECK(c.oracle_samples == 5000);
  CHECK(c.sim_seed == 3);
  CHECK(c.format == OutputFormat::json);
  CHECK(c.output_path == "out.json");
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"sytem": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"lamda": 0.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"quantum": {"restart": 3}})"), ConfigError);
}

TEST_CASE("bad values are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"system": {"lambda": 1.0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"lambda": "x"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"p_grid": [0.3, 0.2]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"p_grid": [0.3, 1.2]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"quantum": {"restarts": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"quantum": {"degree": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sim": {"n_pairs": 100, "warmup_discard": 50}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"([1, 2])"), ConfigError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_config("{\n  \"system\": {\"lambda\": 0.5,}\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("seeds") {
  RunConfig c;
  set_all_seeds(c, 77);
  CHECK(c.quantum.seed == 77);
  CHECK(c.oracle_seed == 77);
  CHECK(c.sim_seed == 77);
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_THROWS_AS(parse_format("yaml"), ConfigError);
}

TEST_CASE("policy files") {
  const PolicySpec b = parse_policy(R"({"kind": "bernoulli", "p": 0.25})");
  CHECK(b.kind == PolicyKind::bernoulli);
  CHECK(b.p == 0.25);
  CHECK(b.load_balance_flip);

  const PolicySpec q = parse_policy(R"({"payoff": 0.1,
    "policy": {"kind": "quantum", "coeffs_a": [0.1, 0.2], "coeffs_b": [0.0, 0.3],
               "load_balance_flip": false}})");
  CHECK(q.kind == PolicyKind::quantum);
  CHECK(q.coeffs_b == std::vector<double>{0.0, 0.3});
  CHECK_FALSE(q.load_balance_flip);

  CHECK_THROWS_AS(parse_policy(R"({"kind": "teleport"})"), ConfigError);
  CHECK_THROWS_AS(parse_policy(R"({"kind": "bernoulli", "p": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_policy(R"({"kind": "bernoulli", "q": 0.1})"), ConfigError);
  CHECK_THROWS_AS(parse_policy(R"({"p": 0.1})"), ConfigError);
  try {
    parse_policy("{\n\"kind\": \"bernoulli\",\n\n  \"p\": 0.2,,\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  CHECK_THROWS_AS(load_policy("/nonexistent/policy.json"), ConfigError);
}
