#pragma once

// Full-information w-threshold policy: split a pair iff w(X1, X2) >= tau_p,
// with tau_p calibrated so that Pr[w > tau_p] = p.

#include <cstddef>
#include <cstdint>
#include <limits>

#include "qroute/kernels.hpp"
#include "qroute/model_core.hpp"

namespace qroute {

inline constexpr std::size_t kMinOracleSamples = 1000;
inline constexpr std::size_t kDefaultOracleSamples = 100000;
inline constexpr std::uint64_t kDefaultOracleSeed = 1;

/// Sentinel threshold for p = 0 (never split).
inline constexpr double kNeverSplit = std::numeric_limits<double>::infinity();

struct OraclePayoff {
  double p = 0.0;
  double tau = 0.0;
  double a_star = 0.0;
  double std_err = 0.0;
  double split_fraction = 0.0;  ///< realized fraction of samples with w >= tau
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// +1 (bunch) when w < tau, -1 (split) otherwise. Ties split.
[[nodiscard]] constexpr int sigma_star(double tau, double w) noexcept {
  return w < tau ? 1 : -1;
}

/// Empirical (1-p)-quantile of w over n iid pairs: the order statistic of rank
/// ceil((1-p) n) without interpolation. p = 0 gives kNeverSplit, p = 1 gives 0.
/// Throws std::invalid_argument for p outside [0, 1] or n < kMinOracleSamples.
double estimate_tau(const SystemParams& params, double p, std::size_t n, std::uint64_t seed,
                    kernels::Backend backend = kernels::Backend::openmp);

/// Monte Carlo A*(p) = -(1/n) sum sigma*(w_i) w_i, using the same sample for
/// the quantile and the payoff. Deterministic in (params, p, n, seed).
OraclePayoff oracle_payoff(const SystemParams& params, double p, std::size_t n,
                           std::uint64_t seed,
                           kernels::Backend backend = kernels::Backend::openmp);

// Deterministic reference values. For fixed x1 the event w > tau is
// X2 > t(x1) = (tau - c2 x1) / (c1 x1 + c2), so the inner expectation over X2
// is closed form and only the outer integral over x1 is done numerically
// (composite Gauss-Legendre up to the kink at x1 = tau / c2, closed form
// beyond it).

/// Pr[w(X1, X2) > tau].
double split_probability_exact(const SystemParams& params, double tau);

/// E[w 1{w > tau}].
double split_benefit_exact(const SystemParams& params, double tau);

/// tau_p by bisection on split_probability_exact.
double tau_exact(const SystemParams& params, double p);

/// A*(p) = 2 E[w 1{w > tau_p}] - E[w].
double oracle_payoff_exact(const SystemParams& params, double p);

}  // namespace qroute
