#include "qroute/classical_cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qroute/rng.hpp"

namespace qroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;
};

Interval hull(double a, double b) { return {std::min(a, b), std::max(a, b)}; }

// Max of the multilinear payoff over a box of moments: attained at a vertex.
double box_max(const SystemParams& params, Interval d0a, Interval d1a, Interval d0b,
               Interval d1b) {
  double best = -kInf;
  for (int mask = 0; mask < 16; ++mask) {
    const ThresholdMoments a{0.0, (mask & 1) ? d0a.hi : d0a.lo, (mask & 2) ? d1a.hi : d1a.lo};
    const ThresholdMoments b{0.0, (mask & 4) ? d0b.hi : d0b.lo, (mask & 8) ? d1b.hi : d1b.lo};
    best = std::max(best, payoff_from_moments(params, a, b));
  }
  return best;
}

// Moment box for theta_A in [ta_lo, ta_hi] and theta_B in [tb_lo, tb_hi];
// D0 and D1 are both non-decreasing in theta.
double moment_box_max(const SystemParams& params, double ta_lo, double ta_hi, double tb_lo,
                      double tb_hi) {
  const double mu = params.mu;
  const auto a_lo = threshold_moments(mu, ta_lo);
  const auto a_hi = threshold_moments(mu, ta_hi);
  const auto b_lo = threshold_moments(mu, tb_lo);
  const auto b_hi = threshold_moments(mu, tb_hi);
  return box_max(params, {a_lo.d0, a_hi.d0}, {a_lo.d1, a_hi.d1}, {b_lo.d0, b_hi.d0},
                 {b_lo.d1, b_hi.d1});
}

CertifiedBound degenerate_bound(const SystemParams& params, double p) {
  CertifiedBound b;
  b.p = p;
  b.degenerate = true;
  b.a_grid = p == 0.0 ? -params.mean_benefit() : params.mean_benefit();
  b.upper = b.a_grid;
  b.a_low_end = b.a_grid;
  b.a_high_end = b.a_grid;
  b.tail_upper = b.a_grid;
  b.boundary_ok = true;
  b.near_min_covered = true;
  b.valid = true;
  // p = 0: both players always +1 (theta = inf); p = 1: A always +1, B always -1.
  b.theta_star = p == 0.0 ? std::pair{kInf, kInf} : std::pair{kInf, 0.0};
  return b;
}

}  // namespace

ThresholdMoments threshold_moments(double mu, double theta) {
  if (!(theta >= 0.0)) throw std::invalid_argument("threshold must be non-negative");
  if (std::isinf(theta)) return {theta, 1.0, 1.0 / mu};
  const double e = std::exp(-mu * theta);
  const double d0 = 1.0 - 2.0 * e;
  return {theta, d0, d0 / mu - 2.0 * theta * e};
}

double payoff_from_moments(const SystemParams& params, const ThresholdMoments& a,
                           const ThresholdMoments& b) noexcept {
  return -params.c1 * a.d1 * b.d1 - params.c2 * (a.d1 * b.d0 + a.d0 * b.d1);
}

double payoff_thresholds(const SystemParams& params, double theta_a, double theta_b) {
  return payoff_from_moments(params, threshold_moments(params.mu, theta_a),
                             threshold_moments(params.mu, theta_b));
}

double theta_min(double mu, double p) { return -std::log(std::min(p, 1.0 - p)) / mu; }

std::optional<double> solve_theta_b(double mu, double p, double theta_a) {
  if (!(p > 0.0 && p < 1.0)) return std::nullopt;
  if (!(theta_a > theta_min(mu, p))) return std::nullopt;
  if (std::isinf(theta_a)) return -std::log(p) / mu;
  const double ea = std::exp(-mu * theta_a);
  const double ratio = (p - ea) / (1.0 - 2.0 * ea);
  if (!(ratio > 0.0 && ratio < 1.0)) return std::nullopt;
  return -std::log(ratio) / mu;
}

std::optional<double> reduced_objective(const SystemParams& params, double p, double theta_a) {
  const auto tb = solve_theta_b(params.mu, p, theta_a);
  if (!tb) return std::nullopt;
  return payoff_thresholds(params, theta_a, *tb);
}

std::optional<double> reduced_objective_derivative(const SystemParams& params, double p,
                                                   double theta_a) {
  const auto tb = solve_theta_b(params.mu, p, theta_a);
  if (!tb) return std::nullopt;
  const double mu = params.mu;
  const double c1 = params.c1;
  const double c2 = params.c2;
  const auto a = threshold_moments(mu, theta_a);
  const auto b = threshold_moments(mu, *tb);
  const double ea = std::exp(-mu * theta_a);
  const double eb = std::exp(-mu * *tb);
  const double d0a_p = 2.0 * mu * ea;
  const double d1a_p = 2.0 * mu * theta_a * ea;
  const double d0b_p = 2.0 * mu * eb;
  const double d1b_p = 2.0 * mu * *tb * eb;
  const double da = -c1 * d1a_p * b.d1 - c2 * (d1a_p * b.d0 + d0a_p * b.d1);
  const double db = -c1 * a.d1 * d1b_p - c2 * (a.d1 * d0b_p + a.d0 * d1b_p);
  // dthB/dthA = -D0'(thA) D0(thB) / (D0(thA) D0'(thB)).
  const double dtb = -(ea * b.d0) / (a.d0 * eb);
  return da + db * dtb;
}

CertifiedBound certified_classical_bound(const SystemParams& params, double p,
                                         const GridConfig& cfg) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (cfg.grid_points < 2) throw std::invalid_argument("need at least two grid points");
  if (cfg.lipschitz_refine < 1) throw std::invalid_argument("refinement factor must be >= 1");
  if (p == 0.0 || p == 1.0) return degenerate_bound(params, p);

  const double mu = params.mu;
  CertifiedBound b;
  b.p = p;
  b.grid_points = cfg.grid_points;
  b.epsilon = cfg.epsilon / mu;
  b.theta_max = cfg.theta_max / mu;
  b.theta_min = theta_min(mu, p);
  const double lo = b.theta_min + b.epsilon;
  const double hi = b.theta_max;
  if (!(cfg.epsilon > 0.0) || !(lo < hi)) {
    throw std::invalid_argument("empty certification interval [theta_min + eps, theta_max]");
  }

  const std::size_t k = cfg.grid_points - 1;
  b.delta = (hi - lo) / static_cast<double>(k);
  std::vector<double> grid(cfg.grid_points);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = lo + b.delta * static_cast<double>(i);
  grid.back() = hi;

  std::vector<double> values(grid.size());
  kernels::map(grid, values, [&](double t) { return *reduced_objective(params, p, t); },
               cfg.backend);
  const kernels::ArgMax best = kernels::argmax(values, cfg.backend);
  b.a_grid = best.value;
  const double ta = grid[best.index];
  const double tb = *solve_theta_b(mu, p, ta);
  b.theta_star = {ta, tb};

  const std::size_t fine_n = k * cfg.lipschitz_refine + 1;
  const double fine_step = (hi - lo) / static_cast<double>(fine_n - 1);
  std::vector<double> fine(fine_n);
  for (std::size_t i = 0; i < fine_n; ++i) fine[i] = lo + fine_step * static_cast<double>(i);
  fine.back() = hi;
  std::vector<double> slopes(fine_n);
  kernels::map(fine, slopes,
               [&](double t) { return *reduced_objective_derivative(params, p, t); },
               cfg.backend);
  b.lipschitz = kernels::max_abs(slopes, cfg.backend);
  b.upper = b.a_grid + b.lipschitz * b.delta / 2.0;

  b.a_low_end = values.front();
  b.a_high_end = values.back();
  b.boundary_ok = b.a_low_end < b.a_grid && b.a_high_end < b.a_grid;

  // theta_A in [theta_max, inf): partner between thB(theta_max) and -ln(p)/mu.
  const auto tail_b = hull(*solve_theta_b(mu, p, hi), -std::log(p) / mu);
  b.tail_upper = moment_box_max(params, hi, kInf, tail_b.lo, tail_b.hi);

  // theta_A in (theta_min, lo): partner between thB(lo) and thB(theta_min+).
  const double tb_lo_end = *solve_theta_b(mu, p, lo);
  const double tb_inf_end = p < 0.5 ? kInf : 0.0;
  const auto near_b = hull(tb_lo_end, tb_inf_end);
  const double near_upper = moment_box_max(params, b.theta_min, lo, near_b.lo, near_b.hi);
  b.near_min_covered = p < 0.5 && tb_lo_end >= lo;

  const bool near_ok = b.near_min_covered || near_upper <= b.upper;
  const bool tail_ok = b.tail_upper <= b.upper;
  b.valid = near_ok && tail_ok;

  const auto ma = threshold_moments(mu, ta);
  const auto mb = threshold_moments(mu, tb);
  b.constraint_residual = std::abs(ma.d0 * mb.d0 - (1.0 - 2.0 * p));
  b.nondegeneracy_margin = params.c1 * mb.d1 + params.c2 * mb.d0;
  return b;
}

LipschitzAudit audit_lipschitz(const SystemParams& params, CertifiedBound& bound,
                               std::size_t n, std::uint64_t seed) {
  LipschitzAudit audit;
  if (bound.degenerate || n == 0) return audit;
  const double lo = bound.theta_min + bound.epsilon;
  const double hi = bound.theta_max;
  Rng rng(derive_key(seed, "lipschitz-audit"));
  std::vector<double> pts(n);
  for (auto& t : pts) t = rng.uniform(lo, hi);
  std::vector<double> slopes(n);
  kernels::map(pts, slopes,
               [&](double t) { return *reduced_objective_derivative(params, bound.p, t); });
  audit.sampled_max = kernels::max_abs(slopes);
  audit.exceeded = audit.sampled_max > 1.01 * bound.lipschitz;
  if (audit.exceeded) {
    bound.lipschitz *= 1.1;
    bound.upper = bound.a_grid + bound.lipschitz * bound.delta / 2.0;
    bound.lipschitz_inflated = true;
  }
  return audit;
}

std::vector<EnvelopePoint> concave_envelope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("envelope needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].first > points[i - 1].first)) {
      throw std::invalid_argument("envelope input must be strictly increasing in p");
    }
  }
  // Monotone-chain upper hull: drop the middle point whenever it lies on or
  // below the chord of its neighbours.
  std::vector<std::size_t> hull_idx;
  hull_idx.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    while (hull_idx.size() >= 2) {
      const auto& o = points[hull_idx[hull_idx.size() - 2]];
      const auto& a = points[hull_idx.back()];
      const auto& c = points[i];
      const double cross =
          (a.first - o.first) * (c.second - o.second) - (a.second - o.second) * (c.first - o.first);
      if (cross >= 0.0) {
        hull_idx.pop_back();
      } else {
        break;
      }
    }
    hull_idx.push_back(i);
  }

  std::vector<EnvelopePoint> out(points.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i].p = points[i].first;
    out[i].det_value = points[i].second;
    while (seg + 1 < hull_idx.size() - 1 && hull_idx[seg + 1] < i) ++seg;
    const std::size_t l = hull_idx[seg];
    const std::size_t r = hull_idx[std::min(seg + 1, hull_idx.size() - 1)];
    if (i == l || l == r) {
      out[i].sr_value = points[l].second;
    } else if (i == r) {
      out[i].sr_value = points[r].second;
    } else {
      const double t = (points[i].first - points[l].first) / (points[r].first - points[l].first);
      out[i].sr_value = (1.0 - t) * points[l].second + t * points[r].second;
    }
    out[i].sr_value = std::max(out[i].sr_value, out[i].det_value);
  }
  return out;
}

}  // namespace qroute
