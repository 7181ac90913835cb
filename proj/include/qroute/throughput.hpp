#pragma once

// Baseline-task throughput. Each server runs baseline work while idle; an
// idle period of length t yields T(t), with productivity phi = T'. Over one
// idle/busy renewal cycle of the per-server queue,
//   throughput = E[T(I)] / E[I + B],   I ~ Exp(Lambda), Lambda = lambda (1+p) / 2.

#include <functional>
#include <span>
#include <vector>

#include "qroute/model_core.hpp"

namespace qroute {

/// phi(t) = phi_max (1 - e^{-alpha t}).
struct WarmupModel {
  double phi_max = 1.0;
  double alpha = 0.5;
};

/// Throws std::invalid_argument unless phi_max > 0 and alpha > 0.
void validate(const WarmupModel& wm);

[[nodiscard]] double productivity(const WarmupModel& wm, double t);

/// T(t) = phi_max [t - (1 - e^{-alpha t}) / alpha]. Throws for t < 0.
[[nodiscard]] double cumulative_output(const WarmupModel& wm, double t);

/// phi_max (1 - rho) 2 alpha / (lambda (1 + p) + 2 alpha).
[[nodiscard]] double avg_throughput(const SystemParams& params, const WarmupModel& wm, double p);

/// avg_throughput / (phi_max (1 - rho)), in (0, 1].
[[nodiscard]] double normalized_throughput(const SystemParams& params, const WarmupModel& wm,
                                           double p);

/// Per-server arrival rate of customers' batches, lambda (1 + p) / 2.
[[nodiscard]] double batch_rate(const SystemParams& params, double p);

/// E[T(I)] for I ~ Exp(big_lambda): phi_max alpha / (Lambda (Lambda + alpha)).
[[nodiscard]] double expected_output_of_idle(const WarmupModel& wm, double big_lambda);

/// E[I] = 2 / (lambda (1 + p)).
[[nodiscard]] double mean_idle_period(const SystemParams& params, double p);
/// E[B] = 2 / ((1 + p) (mu - lambda)).
[[nodiscard]] double mean_busy_period(const SystemParams& params, double p);

/// E[T(I)] / (E[I] + E[B]); equals avg_throughput.
[[nodiscard]] double renewal_throughput(const SystemParams& params, const WarmupModel& wm,
                                        double p);

/// Cumulative output given by monotone (Fritsch-Carlson) cubic interpolation
/// of tabulated (t, T) values, continued linearly past the last knot.
class TabulatedOutput {
 public:
  /// Requires t[0] = 0, strictly increasing t, non-decreasing T, >= 2 knots.
  TabulatedOutput(std::vector<double> t, std::vector<double> value);

  [[nodiscard]] double operator()(double t) const;
  /// Slope of the interpolant, i.e. productivity.
  [[nodiscard]] double derivative(double t) const;

 private:
  std::size_t segment(double t) const;

  std::vector<double> t_, v_, m_;
};

using RateFunction = std::function<double(double)>;

/// Sign of d throughput / dp, computed as the sign of -Cov(U, phi(U)) with
/// U ~ Exp(Lambda) on a Gauss-Laguerre rule. |Cov| < 1e-10 gives 0.
int throughput_derivative_sign(const SystemParams& params, const RateFunction& phi, double p,
                               std::size_t quad_order = 60);
int throughput_derivative_sign(const SystemParams& params, const WarmupModel& wm, double p);
int throughput_derivative_sign(const SystemParams& params, const TabulatedOutput& table,
                               double p);

/// -Cov(U, phi(U)) itself.
double throughput_sign_statistic(const SystemParams& params, const RateFunction& phi, double p,
                                 std::size_t quad_order = 60);

}  // namespace qroute
