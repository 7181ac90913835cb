#pragma once

// Entanglement-assisted strategies with polynomial measurement angles
//   thA(x) = sum_k a_k x^k,   thB(x) = sum_k b_k x^k
// and singlet-type correlation E[oA oB | x1, x2] = cos(2 (thA(x1) - thB(x2))).
// Expectations over (X1, X2) use a product Gauss-Laguerre rule.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qroute/kernels.hpp"
#include "qroute/model_core.hpp"
#include "qroute/quadrature.hpp"
#include "qroute/rng.hpp"

namespace qroute {

[[nodiscard]] double correlation(double theta_a, double theta_b) noexcept;

/// Horner evaluation of sum_k c_k x^k.
[[nodiscard]] double polynomial_angle(std::span<const double> coeffs, double x) noexcept;

struct StrategyValue {
  double payoff = 0.0;
  double p = 0.0;  ///< splitting probability Pr[oA != oB]
};

struct StrategyGradient {
  StrategyValue value;
  std::vector<double> dpayoff_da, dpayoff_db;
  std::vector<double> dp_da, dp_db;
};

/// Precomputed benefit matrix W_ij = w(x_i, x_j) v_i v_j for one rule.
class StrategyEvaluator {
 public:
  StrategyEvaluator(const SystemParams& params, Quadrature quad);

  [[nodiscard]] StrategyValue value(std::span<const double> sa, std::span<const double> sb,
                                    kernels::Backend backend = kernels::Backend::openmp) const;
  [[nodiscard]] StrategyGradient gradient(
      std::span<const double> sa, std::span<const double> sb,
      kernels::Backend backend = kernels::Backend::openmp) const;

  [[nodiscard]] const Quadrature& quadrature() const noexcept { return quad_; }

 private:
  void angles(std::span<const double> sa, std::span<const double> sb, std::vector<double>& ta,
              std::vector<double>& tb) const;

  Quadrature quad_;
  std::vector<double> benefit_;
};

/// Throws std::invalid_argument when the coefficient vectors differ in length
/// or are empty, or when quad was built for a different rate.
StrategyValue eval_strategy(const SystemParams& params, std::span<const double> sa,
                            std::span<const double> sb, const Quadrature& quad);

struct QuantumOptions {
  std::size_t degree = 2;
  std::size_t restarts = 20;
  std::uint64_t seed = 1;
  std::size_t quad_order = 60;
  double tolerance = 1e-8;  ///< on |p_achieved - p_target|
  std::size_t max_iter = 400;
};

struct QuantumStrategy {
  std::size_t degree = 0;
  std::vector<double> coeffs_a;
  std::vector<double> coeffs_b;
  double payoff = 0.0;
  double p_achieved = 0.0;
  double p_target = 0.0;
  double constraint_residual = 0.0;
  std::size_t restarts_used = 0;
  std::size_t feasible_restarts = 0;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
  bool feasible = false;
};

/// Best feasible local maximum of the payoff subject to p(a, b) = p_target
/// over seeded random restarts; a lower bound on the entangled value.
/// Restarts run in parallel on substreams derived from (seed, restart index)
/// and ties go to the lowest index, so the result is independent of the
/// thread count. With no feasible restart the least-infeasible one is
/// returned with feasible = false.
///
/// Throws std::invalid_argument for p_target outside (0, 1) or restarts = 0.
QuantumStrategy optimize_quantum(const SystemParams& params, double p_target,
                                 const QuantumOptions& opt = {});

/// Classical sampler for the entangled joint distribution: oA is a fair
/// +/-1 and oB = oA with probability (1 + cos 2(thA - thB)) / 2.
std::pair<int, int> sample_correlated_outcomes(double theta_a, double theta_b, Rng& rng);

}  // namespace qroute
