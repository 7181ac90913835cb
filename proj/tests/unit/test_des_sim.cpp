#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "qroute/des_sim.hpp"
#include "qroute/rng.hpp"

using namespace qroute;

namespace {
const SystemParams kParams = make_params(0.8, 1.0);
const WarmupModel kWm{};
}  // namespace

TEST_CASE("policy kinds round-trip through names") {
  for (PolicyKind k : {PolicyKind::always_split, PolicyKind::always_bunch, PolicyKind::bernoulli,
                       PolicyKind::oracle_threshold, PolicyKind::classical_thresholds,
                       PolicyKind::quantum}) {
    CHECK(policy_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(policy_kind_from_string("nope"), std::invalid_argument);
}

TEST_CASE("policy validation") {
  CHECK_NOTHROW(validate(PolicySpec::bernoulli(0.3)));
  CHECK_THROWS_AS(validate(PolicySpec::bernoulli(1.5)), std::invalid_argument);
  CHECK_THROWS_AS(validate(PolicySpec::oracle_threshold(-1.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(PolicySpec::classical_thresholds(-1.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(PolicySpec::quantum({0.1}, {})), std::invalid_argument);
  CHECK_THROWS_AS(validate(PolicySpec::quantum({}, {})), std::invalid_argument);
}

TEST_CASE("always split is two M/M/1 queues") {
  const SimStats s = simulate(kParams, PolicySpec::always_split(), kWm, 200000, 1);
  CHECK(s.split_fraction == 1.0);
  CHECK(std::abs(s.mean_wq - 4.0) < 4 * s.wq_se);
  CHECK(std::abs(s.per_server_load[0] - 0.8) < 4 * s.load_se[0]);
  CHECK(std::abs(s.per_server_load[1] - 0.8) < 4 * s.load_se[1]);
  CHECK(s.n_observed == 180000);
  CHECK(s.observed_time > 0.0);
}

TEST_CASE("idle and busy periods") {
  // Per-server batch rate lambda (1+p)/2; E[I] = 1 / rate, E[B] = 2 / ((1+p)(mu - lambda)).
  for (double p : {0.0, 0.5}) {
    const SimStats s = simulate(kParams, PolicySpec::bernoulli(p), kWm, 200000, 2);
    CHECK(std::abs(s.mean_idle - mean_idle_period(kParams, p)) < 4 * s.idle_se);
    CHECK(std::abs(s.mean_busy - mean_busy_period(kParams, p)) < 4 * s.busy_se);
    CHECK(std::abs(s.split_fraction - p) < 4 * s.split_se + 1e-12);
  }
}

TEST_CASE("without the flip, bunched pairs all go to server 1") {
  const SystemParams low = make_params(0.4, 1.0);
  const SimStats s = simulate(low, PolicySpec::always_bunch(false), kWm, 100000, 3);
  CHECK(s.per_server_load[1] == 0.0);
  CHECK(std::abs(s.per_server_load[0] - 0.8) < 4 * s.load_se[0]);
}

TEST_CASE("determinism") {
  const PolicySpec pol = PolicySpec::classical_thresholds(1.5, 2.0);
  const SimStats a = simulate(kParams, pol, kWm, 50000, 5000, 9);
  const SimStats b = simulate(kParams, pol, kWm, 50000, 5000, 9);
  const SimStats c = simulate(kParams, pol, kWm, 50000, 5000, 10);
  CHECK(a.mean_wq == b.mean_wq);
  CHECK(a.wq_se == b.wq_se);
  CHECK(a.baseline_throughput == b.baseline_throughput);
  CHECK(a.mean_wq != c.mean_wq);
}

TEST_CASE("compare_policies") {
  const std::vector<PolicySpec> pols{PolicySpec::always_split(), PolicySpec::bernoulli(0.5),
                                     PolicySpec::always_bunch()};
  omp_set_num_threads(1);
  const auto a = compare_policies(kParams, kWm, pols, 50000, 4);
  omp_set_num_threads(3);
  const auto b = compare_policies(kParams, kWm, pols, 50000, 4);
  omp_set_num_threads(1);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i].mean_wq == b[i].mean_wq);
  const SimStats single = simulate(kParams, pols[1], kWm, 50000, derive_key(4, 1));
  CHECK(single.mean_wq == a[1].mean_wq);

  // Under common random numbers every policy sees the same arrivals, so the
  // split-everything and bunch-everything runs share their observation window.
  const auto crn = compare_policies(kParams, kWm, pols, 50000, 4, true);
  CHECK(crn[0].observed_time == crn[2].observed_time);
  CHECK(crn[0].mean_wq < crn[2].mean_wq);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(simulate(kParams, PolicySpec::always_split(), kWm, 1000, 200, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate(kParams, PolicySpec::always_split(), kWm, 50, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate(kParams, PolicySpec::bernoulli(2.0), kWm, 10000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate(kParams, PolicySpec::always_split(), WarmupModel{0.0, 1.0}, 10000, 1),
                  std::invalid_argument);
}
