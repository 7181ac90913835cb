#pragma once

// Event-driven simulation of the two-server pair-arrival system.
//
// Pairs arrive as a Poisson(lambda) stream; each customer needs Exp(mu)
// service. Player A sees X1 and outputs oA, player B sees X2 and outputs oB;
// customer 1 goes to server 1 when oA = +1 and customer 2 to server 1 when
// oB = +1, so the pair is split exactly when oA oB = -1. With
// load_balance_flip a shared fair bit negates both outputs. Two customers
// sent to one server are ordered by an independent fair coin. While a
// server is idle it runs baseline work, credited with T(idle length) when
// the idle period ends.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qroute/model_core.hpp"
#include "qroute/throughput.hpp"

namespace qroute {

enum class PolicyKind {
  always_split,
  always_bunch,
  bernoulli,
  oracle_threshold,
  classical_thresholds,
  quantum,
};

std::string to_string(PolicyKind kind);
/// Throws std::invalid_argument for unknown names.
PolicyKind policy_kind_from_string(const std::string& name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::always_split;
  double p = 0.0;        ///< bernoulli
  double tau = 0.0;      ///< oracle_threshold: split iff w >= tau
  double theta_a = 0.0;  ///< classical_thresholds: oA = +1 iff x1 < theta_a
  double theta_b = 0.0;
  std::vector<double> coeffs_a;  ///< quantum angle polynomials
  std::vector<double> coeffs_b;
  bool load_balance_flip = true;

  static PolicySpec always_split(bool flip = true);
  static PolicySpec always_bunch(bool flip = true);
  static PolicySpec bernoulli(double p, bool flip = true);
  static PolicySpec oracle_threshold(double tau, bool flip = true);
  static PolicySpec classical_thresholds(double theta_a, double theta_b, bool flip = true);
  static PolicySpec quantum(std::vector<double> a, std::vector<double> b, bool flip = true);
};

/// Throws std::invalid_argument when parameters are invalid for the kind.
void validate(const PolicySpec& policy);

inline constexpr std::size_t kSimBatches = 32;

struct SimStats {
  std::size_t n_pairs = 0;      ///< pairs simulated, warm-up included
  std::size_t n_observed = 0;   ///< pairs after the warm-up discard
  double mean_wq = 0.0;
  double wq_se = 0.0;
  double split_fraction = 0.0;
  double split_se = 0.0;
  std::array<double, 2> per_server_load{0.0, 0.0};
  std::array<double, 2> load_se{0.0, 0.0};
  double baseline_throughput = 0.0;  ///< per server, averaged over both
  double throughput_se = 0.0;
  double mean_idle = 0.0;
  double idle_se = 0.0;
  double mean_busy = 0.0;
  double busy_se = 0.0;
  double observed_time = 0.0;
};

/// Standard errors are batch means over kSimBatches batches of pairs.
/// Deterministic in the seed; arrivals, services, policy randomness and
/// within-server ordering use separate substreams.
///
/// Throws std::invalid_argument for unstable params, an invalid policy,
/// n_pairs < 10 * warmup_discard or too few observed pairs.
SimStats simulate(const SystemParams& params, const PolicySpec& policy, const WarmupModel& wm,
                  std::size_t n_pairs, std::size_t warmup_discard, std::uint64_t seed);

/// warmup_discard = n_pairs / 10.
SimStats simulate(const SystemParams& params, const PolicySpec& policy, const WarmupModel& wm,
                  std::size_t n_pairs, std::uint64_t seed);

/// Runs each policy, in parallel. Policy i uses a seed derived from
/// (seed, i) unless common_random_numbers is set, in which case every policy
/// sees the same arrivals, services and coins.
std::vector<SimStats> compare_policies(const SystemParams& params, const WarmupModel& wm,
                                       const std::vector<PolicySpec>& policies,
                                       std::size_t n_pairs, std::uint64_t seed,
                                       bool common_random_numbers = false);

}  // namespace qroute
