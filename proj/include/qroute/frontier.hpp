#pragma once

// Per-p sweep: oracle payoff, certified classical bounds (deterministic and
// shared-randomness envelope), optimized entangled strategy, waiting-time
// gaps and normalized baseline throughput.

#include <cstddef>
#include <string>
#include <vector>

#include "qroute/config.hpp"

namespace qroute {

struct FrontierPoint {
  double p = 0.0;
  double a_star = 0.0;
  double a_star_se = 0.0;
  double a_cl_upper = 0.0;     ///< certified deterministic bound
  double a_cl_sr_upper = 0.0;  ///< concave envelope of the certified bounds
  double a_qu_lower = 0.0;     ///< achieved entangled payoff
  double dwq_cl = 0.0;         ///< (a_star - a_cl_sr_upper) / 2
  double dwq_qu = 0.0;         ///< (a_star - a_qu_lower) / 2
  bool advantage = false;      ///< a_qu_lower > a_cl_sr_upper with a valid certificate
  double throughput_norm = 0.0;
  bool certificate_valid = false;
  bool quantum_feasible = false;
  std::string error;  ///< empty for a successful row

  [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

struct FrontierSummary {
  bool has_advantage = false;
  double advantage_lo = 0.0;  ///< smallest grid p with advantage
  double advantage_hi = 0.0;  ///< largest grid p with advantage
  double max_gap = 0.0;       ///< max of dwq_cl - dwq_qu over successful rows
  double argmax_p = 0.0;
  std::size_t n_points = 0;
  std::size_t n_failed = 0;
  bool all_certificates_valid = true;
  bool all_quantum_feasible = true;
};

struct Frontier {
  std::vector<FrontierPoint> points;
  FrontierSummary summary;
};

/// Rows failing inside a module are kept with their error message; the
/// sweep continues. Throws ConfigError for an empty p_grid.
Frontier compute_frontier(const RunConfig& cfg);

FrontierSummary summarize(const std::vector<FrontierPoint>& points);

}  // namespace qroute
