#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "qroute/report.hpp"

using namespace qroute;

namespace {

std::vector<FrontierPoint> sample_rows() {
  FrontierPoint a;
  a.p = 0.025;
  a.a_star = 1.0 / 3.0;
  a.a_star_se = 0.0123456789012345;
  a.a_cl_upper = -2.2;
  a.a_cl_sr_upper = -2.0000000001;
  a.a_qu_lower = -2.1;
  a.dwq_cl = 1.1;
  a.dwq_qu = 1.2;
  a.advantage = false;
  a.throughput_norm = 0.55;
  FrontierPoint b = a;
  b.p = 0.2;
  b.advantage = true;
  b.a_qu_lower = 1e-17;
  FrontierPoint c;
  c.p = 0.3;
  c.a_star = std::numeric_limits<double>::quiet_NaN();
  c.a_cl_upper = std::numeric_limits<double>::infinity();
  c.error = "quadrature failed, \"badly\"";
  return {a, b, c};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-9) == "-2.5e-09");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("frontier CSV round-trip") {
  const auto rows = sample_rows();
  std::ostringstream first;
  write_frontier_csv(first, rows);
  const std::string text = first.str();
  CHECK(text.rfind(
            "p,a_star,a_star_se,a_cl_upper,a_cl_sr_upper,a_qu_lower,dwq_cl,dwq_qu,advantage,"
            "throughput_norm,status\n",
            0) == 0);

  std::istringstream in(text);
  const auto back = read_frontier_csv(in);
  REQUIRE(back.size() == rows.size());
  std::ostringstream second;
  write_frontier_csv(second, back);
  CHECK(second.str() == text);

  CHECK(back[0].a_star == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(back[1].advantage);
  CHECK(back[1].ok());
  CHECK_FALSE(back[2].ok());
  CHECK(std::isnan(back[2].a_star));
  CHECK(std::isinf(back[2].a_cl_upper));
  CHECK(back[2].error.find("quadrature failed") != std::string::npos);
}

TEST_CASE("malformed CSV") {
  std::istringstream bad_header("p,a\n");
  CHECK_THROWS(read_frontier_csv(bad_header));
  std::istringstream short_row(
      "p,a_star,a_star_se,a_cl_upper,a_cl_sr_upper,a_qu_lower,dwq_cl,dwq_qu,advantage,"
      "throughput_norm,status\n0.1,2\n");
  CHECK_THROWS(read_frontier_csv(short_row));
}

TEST_CASE("JSON documents") {
  Frontier f;
  f.points = sample_rows();
  f.summary = summarize(f.points);
  const auto j = nlohmann::json::parse(frontier_json(f));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["points"].size() == 3);
  CHECK(j["points"][2]["a_star"].is_null());
  CHECK(j["points"][2]["a_cl_upper"] == "inf");
  CHECK(j["summary"]["advantage_interval"][0] == 0.2);
  CHECK(j["summary"]["n_failed"] == 1);

  const auto s = nlohmann::json::parse(summary_json(f.summary));
  CHECK(s["schema_version"] == kSchemaVersion);
  CHECK(s.contains("advantage_interval_note"));

  QuantumStrategy q;
  q.coeffs_a = {0.1, 0.2};
  q.coeffs_b = {0.3, 0.4};
  const auto qj = nlohmann::json::parse(strategy_json(q));
  CHECK(qj["policy"]["kind"] == "quantum");
  CHECK(qj["policy"]["coeffs_b"][1] == 0.4);
}

TEST_CASE("simulation and throughput exports") {
  SimStats s;
  s.mean_wq = 4.0;
  std::ostringstream out;
  write_simstats_csv(out, "always_split", s);
  CHECK(out.str().find("\nalways_split,0,0,4,") != std::string::npos);
  const auto j = nlohmann::json::parse(simstats_json("always_split", s));
  CHECK(j["mean_wq"] == 4.0);

  std::ostringstream t;
  write_throughput_csv(t, {{0.0, 0.1, 0.5}});
  CHECK(t.str() == "p,throughput,throughput_norm\n0,0.1,0.5\n");
  CHECK(nlohmann::json::parse(throughput_json({{0.0, 0.1, 0.5}}))["rows"].size() == 1);
}
