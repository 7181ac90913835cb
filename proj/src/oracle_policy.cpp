#include "qroute/oracle_policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qroute/quadrature.hpp"
#include "qroute/rng.hpp"

namespace qroute {

namespace {

void validate(double p, std::size_t n) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (n < kMinOracleSamples) {
    throw std::invalid_argument("oracle needs at least 1000 samples");
  }
}

std::vector<double> draw(const SystemParams& params, std::size_t n, std::uint64_t seed,
                         kernels::Backend backend) {
  std::vector<double> w(n);
  kernels::sample_benefits(derive_key(seed, "oracle-pairs"), params.mu, params.c1, params.c2,
                           w, backend);
  return w;
}

double quantile_of(std::vector<double> w, double p) {
  if (p <= 0.0) return kNeverSplit;
  if (p >= 1.0) return 0.0;
  const double n = static_cast<double>(w.size());
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - p) * n));
  rank = std::clamp<std::size_t>(rank, 1, w.size());
  auto kth = w.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(w.begin(), kth, w.end());
  return *kth;
}

struct Integrals {
  double prob = 0.0;
  double benefit = 0.0;
};

Integrals threshold_integrals(const SystemParams& prm, double tau) {
  const double mu = prm.mu;
  const double c1 = prm.c1;
  const double c2 = prm.c2;
  if (tau <= 0.0) return {1.0, prm.mean_benefit()};
  const double kink = tau / c2;

  // x1 >= kink: every X2 splits.
  const double ek = std::exp(-mu * kink);
  Integrals out;
  out.prob = ek;
  out.benefit = ek * ((c1 / mu + c2) * (kink + 1.0 / mu) + c2 / mu);

  const Rule rule = composite_gauss_legendre(20, 64, 0.0, kink);
  double prob = 0.0;
  double ben = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double slope = c1 * x + c2;
    const double t = (tau - c2 * x) / slope;
    const double tail = std::exp(-mu * t);
    const double dens = mu * std::exp(-mu * x) * rule.weights[i];
    prob += tail * dens;
    ben += tail * (slope * (t + 1.0 / mu) + c2 * x) * dens;
  }
  out.prob += prob;
  out.benefit += ben;
  return out;
}

}  // namespace

double estimate_tau(const SystemParams& params, double p, std::size_t n, std::uint64_t seed,
                    kernels::Backend backend) {
  validate(p, n);
  if (p == 0.0) return kNeverSplit;
  if (p == 1.0) return 0.0;
  return quantile_of(draw(params, n, seed, backend), p);
}

OraclePayoff oracle_payoff(const SystemParams& params, double p, std::size_t n,
                           std::uint64_t seed, kernels::Backend backend) {
  validate(p, n);
  const std::vector<double> w = draw(params, n, seed, backend);
  OraclePayoff out;
  out.p = p;
  out.n_samples = n;
  out.seed = seed;
  out.tau = quantile_of(w, p);
  const kernels::SignedSums s = kernels::threshold_sums(w, out.tau, backend);
  const double nn = static_cast<double>(n);
  out.a_star = s.sum / nn;
  const double var = std::max(0.0, (s.sum_sq - nn * out.a_star * out.a_star) / (nn - 1.0));
  out.std_err = std::sqrt(var / nn);
  out.split_fraction = static_cast<double>(s.split) / nn;
  return out;
}

double split_probability_exact(const SystemParams& params, double tau) {
  return threshold_integrals(params, tau).prob;
}

double split_benefit_exact(const SystemParams& params, double tau) {
  return threshold_integrals(params, tau).benefit;
}

double tau_exact(const SystemParams& params, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (p == 0.0) return kNeverSplit;
  if (p == 1.0) return 0.0;
  double lo = 0.0;
  double hi = params.mean_benefit();
  while (split_probability_exact(params, hi) > p) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (split_probability_exact(params, mid) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double oracle_payoff_exact(const SystemParams& params, double p) {
  const double tau = tau_exact(params, p);
  if (std::isinf(tau)) return -params.mean_benefit();
  return 2.0 * split_benefit_exact(params, tau) - params.mean_benefit();
}

}  // namespace qroute
