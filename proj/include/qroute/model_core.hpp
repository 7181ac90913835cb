#pragma once

// Two-server pair-arrival model: parameters, splitting benefit, waiting-time
// decomposition and the payoff/waiting-time correspondence.

#include <stdexcept>
#include <string>

namespace qroute {

/// Raised when a payoff pair is inconsistent with a_star being the optimum.
class InconsistentPayoff : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arrival/service rates of the pair-arrival system plus derived constants.
///
/// Service times are Exp(mu), so E[S] = 2/mu and E[S^2] = 6/mu^2 for the pair
/// total S = X1 + X2.
struct SystemParams {
  double lambda = 0.0;    ///< pair arrival rate
  double mu = 0.0;        ///< per-customer service rate
  double rho = 0.0;       ///< lambda / mu
  double c1 = 0.0;        ///< lambda / (2 (1 - rho))
  double c2 = 0.25;
  double wq_const = 0.0;  ///< mean wait under always-bunch

  /// E[w(X1, X2)] = c1/mu^2 + 2 c2/mu, the always-split payoff.
  [[nodiscard]] double mean_benefit() const noexcept {
    return c1 / (mu * mu) + 2.0 * c2 / mu;
  }
};

/// Throws std::invalid_argument for non-positive rates or rho >= 1.
SystemParams make_params(double lambda, double mu);

/// w(x1, x2) = c1 x1 x2 + c2 (x1 + x2).
[[nodiscard]] inline double splitting_benefit(const SystemParams& params, double x1,
                                              double x2) noexcept {
  return params.c1 * x1 * x2 + params.c2 * (x1 + x2);
}

struct OrderStatMoments {
  double e_min = 0.0;
  double e_min_sq = 0.0;
  double e_max = 0.0;
  double e_max_sq = 0.0;
};

/// Moments of min/max of two iid Exp(mu) variables.
OrderStatMoments exp_order_stat_moments(double mu);

/// E[Wq] = C - E[r w], where expected_rw = E[r w] for the routing policy.
double waiting_time_from_split_weight(const SystemParams& params, double expected_rw);

/// Default slack for the a <= a_star consistency check.
inline constexpr double kPayoffTolerance = 1e-6;

/// Excess waiting time (a_star - a) / 2 relative to the optimum at the same p.
/// Throws InconsistentPayoff when a exceeds a_star by more than `tolerance`;
/// small violations inside the tolerance are returned unclamped.
double delta_wq(double a_star, double a, double tolerance = kPayoffTolerance);

}  // namespace qroute
