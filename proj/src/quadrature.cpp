#include "qroute/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qroute {

namespace {

// Returns (L_n(x), L_{n+1}(x)) via the three-term recurrence
// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
std::pair<double, double> laguerre_pair(std::size_t n, double x) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 0) return {prev, cur};
  for (std::size_t k = 1; k < n + 1; ++k) {
    const double kk = static_cast<double>(k);
    const double next = ((2.0 * kk + 1.0 - x) * cur - kk * prev) / (kk + 1.0);
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

}  // namespace

Quadrature gauss_laguerre(std::size_t order, double mu) {
  if (order < 2) throw std::invalid_argument("Gauss-Laguerre order must be >= 2");
  if (order > kMaxLaguerreOrder) {
    throw std::invalid_argument("Gauss-Laguerre order above stability limit");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("rate must be positive");

  const auto n = static_cast<Eigen::Index>(order);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = 2.0 * static_cast<double>(k) + 1.0;
  for (Eigen::Index k = 1; k < n; ++k) sub(k - 1) = static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Golub-Welsch eigenvalue solve failed");
  }

  Quadrature q;
  q.mu = mu;
  q.order = order;
  q.nodes.resize(order);
  q.weights.resize(order);
  const double np1 = static_cast<double>(order + 1);
  for (std::size_t i = 0; i < order; ++i) {
    double x = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    // Newton on L_n with L_n'(x) = n (L_n - L_{n-1}) / x.
    for (int it = 0; it < 3; ++it) {
      const auto [lnm1, ln] = laguerre_pair(order - 1, x);
      const double dln = static_cast<double>(order) * (ln - lnm1) / x;
      const double step = ln / dln;
      x -= step;
      if (std::abs(step) <= 1e-16 * x) break;
    }
    const double lnp1 = laguerre_pair(order, x).second;
    q.nodes[i] = x / mu;
    q.weights[i] = x / (np1 * np1 * lnp1 * lnp1);
  }
  // The weights are a probability measure; removing the accumulated rounding
  // in their sum keeps E[1] exact.
  double total = 0.0;
  for (auto it = q.weights.rbegin(); it != q.weights.rend(); ++it) total += *it;
  for (double& w : q.weights) w /= total;
  return q;
}

Rule gauss_legendre(std::size_t order, double a, double b) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  Rule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const double n = static_cast<double>(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    r.nodes[i] = mid + half * x;
    r.weights[i] = half * 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

Rule composite_gauss_legendre(std::size_t order, std::size_t panels, double a, double b) {
  if (panels == 0) throw std::invalid_argument("need at least one panel");
  Rule out;
  out.nodes.reserve(order * panels);
  out.weights.reserve(order * panels);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const Rule r = gauss_legendre(order, lo, lo + h);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

}  // namespace qroute
