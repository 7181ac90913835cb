#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <sstream>

#include "qroute/frontier.hpp"
#include "qroute/report.hpp"

using namespace qroute;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.p_grid = {0.05, 0.2, 0.4};
  cfg.classical.grid_points = 200;
  cfg.quantum.restarts = 4;
  cfg.oracle_samples = 20000;
  return cfg;
}

std::string csv_of(const Frontier& f) {
  std::ostringstream out;
  write_frontier_csv(out, f.points);
  return out.str();
}

}  // namespace

TEST_CASE("row invariants") {
  const Frontier f = compute_frontier(small_config());
  REQUIRE(f.points.size() == 3);
  for (const auto& pt : f.points) {
    REQUIRE(pt.ok());
    CHECK(std::abs(pt.dwq_cl - (pt.a_star - pt.a_cl_sr_upper) / 2) <= 1e-12);
    CHECK(std::abs(pt.dwq_qu - (pt.a_star - pt.a_qu_lower) / 2) <= 1e-12);
    CHECK(pt.a_cl_sr_upper >= pt.a_cl_upper);
    if (pt.advantage) CHECK(pt.dwq_qu < pt.dwq_cl);
    CHECK(pt.certificate_valid);
    CHECK(pt.quantum_feasible);
    CHECK(pt.throughput_norm > 0.0);
    CHECK(pt.throughput_norm <= 1.0);
  }
  CHECK(f.points[1].advantage);
  CHECK(f.summary.has_advantage);
  CHECK(f.summary.n_failed == 0);
}

TEST_CASE("reruns are byte-identical at any thread count") {
  const RunConfig cfg = small_config();
  omp_set_num_threads(1);
  const std::string a = csv_of(compute_frontier(cfg));
  omp_set_num_threads(3);
  const std::string b = csv_of(compute_frontier(cfg));
  omp_set_num_threads(1);
  CHECK(a == b);
}

TEST_CASE("endpoint rows") {
  RunConfig cfg = small_config();
  cfg.p_grid = {0.0, 0.2, 1.0};
  const Frontier f = compute_frontier(cfg);
  CHECK(f.points[0].a_qu_lower == doctest::Approx(-2.5));
  CHECK(f.points[0].a_cl_sr_upper == doctest::Approx(-2.5));
  CHECK(f.points[2].a_cl_sr_upper == doctest::Approx(2.5));
  CHECK_FALSE(f.points[0].advantage);
}

TEST_CASE("a failing row is recorded and the sweep continues") {
  RunConfig cfg = small_config();
  cfg.p_grid = {0.2, 0.9995};
  cfg.classical.theta_max = 5.0;  // below theta_min at the second p
  const Frontier f = compute_frontier(cfg);
  REQUIRE(f.points.size() == 2);
  CHECK(f.points[0].ok());
  CHECK_FALSE(f.points[1].ok());
  CHECK(std::isnan(f.points[1].dwq_cl));
  CHECK(f.summary.n_failed == 1);
}

TEST_CASE("empty grid") {
  RunConfig cfg;
  cfg.p_grid.clear();
  CHECK_THROWS_AS(compute_frontier(cfg), ConfigError);
}
