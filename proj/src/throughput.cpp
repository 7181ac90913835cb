#include "qroute/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qroute/quadrature.hpp"

namespace qroute {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

}  // namespace

void validate(const WarmupModel& wm) {
  if (!(wm.phi_max > 0.0) || !std::isfinite(wm.phi_max)) {
    throw std::invalid_argument("phi_max must be positive");
  }
  if (!(wm.alpha > 0.0) || !std::isfinite(wm.alpha)) {
    throw std::invalid_argument("alpha must be positive");
  }
}

double productivity(const WarmupModel& wm, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  return -wm.phi_max * std::expm1(-wm.alpha * t);
}

double cumulative_output(const WarmupModel& wm, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  return wm.phi_max * (t + std::expm1(-wm.alpha * t) / wm.alpha);
}

double avg_throughput(const SystemParams& params, const WarmupModel& wm, double p) {
  check_p(p);
  return wm.phi_max * (1.0 - params.rho) * 2.0 * wm.alpha /
         (params.lambda * (1.0 + p) + 2.0 * wm.alpha);
}

double normalized_throughput(const SystemParams& params, const WarmupModel& wm, double p) {
  return avg_throughput(params, wm, p) / (wm.phi_max * (1.0 - params.rho));
}

double batch_rate(const SystemParams& params, double p) {
  check_p(p);
  return params.lambda * (1.0 + p) / 2.0;
}

double expected_output_of_idle(const WarmupModel& wm, double big_lambda) {
  if (!(big_lambda > 0.0)) throw std::invalid_argument("batch rate must be positive");
  return wm.phi_max * wm.alpha / (big_lambda * (big_lambda + wm.alpha));
}

double mean_idle_period(const SystemParams& params, double p) {
  check_p(p);
  return 2.0 / (params.lambda * (1.0 + p));
}

double mean_busy_period(const SystemParams& params, double p) {
  check_p(p);
  return 2.0 / ((1.0 + p) * (params.mu - params.lambda));
}

double renewal_throughput(const SystemParams& params, const WarmupModel& wm, double p) {
  return expected_output_of_idle(wm, batch_rate(params, p)) /
         (mean_idle_period(params, p) + mean_busy_period(params, p));
}

TabulatedOutput::TabulatedOutput(std::vector<double> t, std::vector<double> value)
    : t_(std::move(t)), v_(std::move(value)) {
  const std::size_t n = t_.size();
  if (n < 2 || v_.size() != n) throw std::invalid_argument("need >= 2 matching knots");
  if (t_[0] != 0.0) throw std::invalid_argument("first knot must be t = 0");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("knots must be strictly increasing");
    if (v_[i] < v_[i - 1]) throw std::invalid_argument("cumulative output must not decrease");
  }
  std::vector<double> sec(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
  m_.assign(n, 0.0);
  m_[0] = sec[0];
  m_[n - 1] = sec[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    m_[i] = sec[i - 1] * sec[i] > 0.0 ? 0.5 * (sec[i - 1] + sec[i]) : 0.0;
  }
  // Fritsch-Carlson limiter.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sec[i] == 0.0) {
      m_[i] = 0.0;
      m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / sec[i];
    const double b = m_[i + 1] / sec[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m_[i] = tau * a * sec[i];
      m_[i + 1] = tau * b * sec[i];
    }
  }
}

std::size_t TabulatedOutput::segment(double t) const {
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const auto idx = static_cast<std::size_t>(it - t_.begin());
  return std::min(idx == 0 ? 0 : idx - 1, t_.size() - 2);
}

double TabulatedOutput::operator()(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  if (t >= t_.back()) return v_.back() + m_.back() * (t - t_.back());
  const std::size_t k = segment(t);
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * v_[k] + (s3 - 2 * s2 + s) * h * m_[k] +
         (-2 * s3 + 3 * s2) * v_[k + 1] + (s3 - s2) * h * m_[k + 1];
}

double TabulatedOutput::derivative(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
  if (t >= t_.back()) return m_.back();
  const std::size_t k = segment(t);
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;
  const double s2 = s * s;
  return (6 * s2 - 6 * s) / h * v_[k] + (3 * s2 - 4 * s + 1) * m_[k] +
         (-6 * s2 + 6 * s) / h * v_[k + 1] + (3 * s2 - 2 * s) * m_[k + 1];
}

double throughput_sign_statistic(const SystemParams& params, const RateFunction& phi, double p,
                                 std::size_t quad_order) {
  const Quadrature q = gauss_laguerre(quad_order, batch_rate(params, p));
  double eu = 0.0;
  double ephi = 0.0;
  double euphi = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double u = q.nodes[i];
    const double f = phi(u);
    eu += q.weights[i] * u;
    ephi += q.weights[i] * f;
    euphi += q.weights[i] * u * f;
  }
  return -(euphi - eu * ephi);
}

int throughput_derivative_sign(const SystemParams& params, const RateFunction& phi, double p,
                               std::size_t quad_order) {
  const double s = throughput_sign_statistic(params, phi, p, quad_order);
  if (std::abs(s) < 1e-10) return 0;
  return s > 0.0 ? 1 : -1;
}

int throughput_derivative_sign(const SystemParams& params, const WarmupModel& wm, double p) {
  return throughput_derivative_sign(params, [&](double t) { return productivity(wm, t); }, p);
}

int throughput_derivative_sign(const SystemParams& params, const TabulatedOutput& table,
                               double p) {
  return throughput_derivative_sign(params, [&](double t) { return table.derivative(t); }, p);
}

}  // namespace qroute
