#pragma once

// Certified upper bounds on the best non-communicating classical strategy.
//
// Optimal deterministic strategies are threshold pairs f_thA, f_thB with
// f_th(x) = +1 for x < th and -1 otherwise. Everything reduces to the moments
//   D0(th) = E[f_th(X)]     = 1 - 2 e^{-mu th}
//   D1(th) = E[f_th(X) X]   = D0(th)/mu - 2 th e^{-mu th}
// and the splitting constraint D0(thA) D0(thB) = 1 - 2p.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qroute/kernels.hpp"
#include "qroute/model_core.hpp"

namespace qroute {

struct ThresholdMoments {
  double theta = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
};

/// theta = +infinity is accepted (d0 = 1, d1 = 1/mu). Negative theta throws.
ThresholdMoments threshold_moments(double mu, double theta);

/// Bilinear game payoff -c1 D1A D1B - c2 (D1A D0B + D0A D1B).
[[nodiscard]] double payoff_from_moments(const SystemParams& params, const ThresholdMoments& a,
                                         const ThresholdMoments& b) noexcept;

double payoff_thresholds(const SystemParams& params, double theta_a, double theta_b);

/// Infimum of the feasible theta_A range, -ln(min(p, 1-p)) / mu.
double theta_min(double mu, double p);

/// Partner threshold on the constraint curve,
///   e^{-mu thB} = (p - e^{-mu thA}) / D0(thA),
/// which is the usual -ln(0.5 (1 - (1-2p)/D0(thA))) / mu written without the
/// cancellation near thA = theta_min. The same parameterization covers
/// p in (1/2, 1), where the feasible range starts at -ln(1-p)/mu.
/// Returns nullopt when thA <= theta_min(p).
std::optional<double> solve_theta_b(double mu, double p, double theta_a);

/// A~(thA) = A(thA, thB(thA)).
std::optional<double> reduced_objective(const SystemParams& params, double p, double theta_a);

/// dA~/dthA by the chain rule with implicit differentiation of the constraint.
std::optional<double> reduced_objective_derivative(const SystemParams& params, double p,
                                                   double theta_a);

struct GridConfig {
  std::size_t grid_points = 500;
  double theta_max = 12.0;        ///< in units of 1/mu
  double epsilon = 1e-2;          ///< in units of 1/mu
  std::size_t lipschitz_refine = 10;
  kernels::Backend backend = kernels::Backend::openmp;
};

/// Certificate for A*_cl(p) <= upper over the grid [theta_min + eps, theta_max].
///
/// `boundary_ok` is the endpoint test A~(theta_min + eps) < a_grid and
/// A~(theta_max) < a_grid. The excluded regions are also enclosed directly.
/// A is multilinear in (D0A, D1A, D0B, D1B) and both moments are monotone in
/// theta, so over a theta-box its maximum sits at one of 16 vertices of the
/// moment box:
///   * theta_A >= theta_max gives `tail_upper`.
///   * theta_A in (theta_min, theta_min + eps) gets the same treatment. For
///     p < 1/2 these points are also the player-exchanged images of grid or
///     tail points (the constraint map is an involution), which is recorded
///     in `near_min_covered`.
/// `valid` holds when both excluded regions are bounded by `upper`. On the
/// default grid the maximum of A~ moves to theta_max for p above roughly
/// 0.18, so `boundary_ok` alone would reject certificates that are sound.
struct CertifiedBound {
  double p = 0.0;
  double a_grid = 0.0;
  double lipschitz = 0.0;
  double delta = 0.0;
  double upper = 0.0;  ///< a_grid + lipschitz * delta / 2
  std::pair<double, double> theta_star{0.0, 0.0};
  bool boundary_ok = false;
  double epsilon = 0.0;    ///< absolute
  double theta_max = 0.0;  ///< absolute
  double theta_min = 0.0;
  std::size_t grid_points = 0;
  double a_low_end = 0.0;   ///< A~(theta_min + eps)
  double a_high_end = 0.0;  ///< A~(theta_max)
  double tail_upper = 0.0;
  bool near_min_covered = false;
  bool valid = false;
  bool degenerate = false;          ///< p in {0, 1}: exact, zero width
  bool lipschitz_inflated = false;  ///< set by audit_lipschitz
  double constraint_residual = 0.0;
  double nondegeneracy_margin = 0.0;  ///< c1 E1 + c2 E0 of player B at theta_star
};

/// Throws std::invalid_argument for p outside [0, 1] or an empty grid interval.
CertifiedBound certified_classical_bound(const SystemParams& params, double p,
                                         const GridConfig& cfg = {});

struct LipschitzAudit {
  double sampled_max = 0.0;
  bool exceeded = false;  ///< sampled_max > 1.01 * lipschitz
};

/// Compares the certificate's L with max |dA~/dthA| over n uniform random
/// points of the certified interval. When exceeded, L is multiplied by 1.1,
/// upper is recomputed and lipschitz_inflated is set.
LipschitzAudit audit_lipschitz(const SystemParams& params, CertifiedBound& bound,
                               std::size_t n, std::uint64_t seed);

struct EnvelopePoint {
  double p = 0.0;
  double det_value = 0.0;
  double sr_value = 0.0;
};

/// Upper concave envelope (monotone chain upper hull) evaluated at the input
/// abscissae. Input must be strictly increasing in p with at least two points.
std::vector<EnvelopePoint> concave_envelope(std::span<const std::pair<double, double>> points);

}  // namespace qroute
