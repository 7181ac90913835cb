#include "qroute/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "qroute/rng.hpp"

namespace qroute::kernels {

namespace {

constexpr std::size_t kChunk = 4096;

bool better(double v, std::size_t i, const ArgMax& best) {
  return v > best.value || (v == best.value && i < best.index);
}

}  // namespace

ArgMax argmax(std::span<const double> values, Backend backend) {
  assert(!values.empty());
  ArgMax best{0, values[0]};
  if (backend == Backend::serial) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (better(values[i], i, best)) best = {i, values[i]};
    }
    return best;
  }
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel
  {
    ArgMax local{0, -std::numeric_limits<double>::infinity()};
    bool any = false;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      if (!any || better(values[u], u, local)) {
        local = {u, values[u]};
        any = true;
      }
    }
#pragma omp critical(qroute_argmax)
    if (any && better(local.value, local.index, best)) best = local;
  }
  return best;
}

double max_abs(std::span<const double> values, Backend backend) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  if (backend == Backend::serial) {
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(values[i]));
  return m;
}

CorrelationSums correlation_sums(std::span<const double> ta, std::span<const double> tb,
                                 std::span<const double> benefit_weights,
                                 std::span<const double> node_weights, Backend backend) {
  const std::size_t m = ta.size();
  assert(tb.size() == m && node_weights.size() == m && benefit_weights.size() == m * m);
  std::vector<double> row_payoff(m), row_prob(m);
  auto row = [&](std::size_t i) {
    double sw = 0.0;
    double sp = 0.0;
    const double* wrow = benefit_weights.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = std::cos(2.0 * (ta[i] - tb[j]));
      sw += c * wrow[j];
      sp += (1.0 - c) * node_weights[j];
    }
    row_payoff[i] = -sw;
    row_prob[i] = 0.5 * sp * node_weights[i];
  };
  const auto n = static_cast<std::ptrdiff_t>(m);
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
  }
  CorrelationSums out;
  for (std::size_t i = 0; i < m; ++i) {
    out.payoff += row_payoff[i];
    out.split_prob += row_prob[i];
  }
  return out;
}

CorrelationGradient correlation_gradient(std::span<const double> ta,
                                         std::span<const double> tb,
                                         std::span<const double> benefit_weights,
                                         std::span<const double> node_weights,
                                         Backend backend) {
  const std::size_t m = ta.size();
  assert(tb.size() == m && node_weights.size() == m && benefit_weights.size() == m * m);
  std::vector<double> cosm(m * m), sinm(m * m);
  CorrelationGradient g;
  g.dpayoff_dta.assign(m, 0.0);
  g.dprob_dta.assign(m, 0.0);
  g.dpayoff_dtb.assign(m, 0.0);
  g.dprob_dtb.assign(m, 0.0);
  std::vector<double> row_payoff(m), row_prob(m);

  // d/dta_i of -cos(2(ta_i - tb_j)) W_ij is 2 sin(.) W_ij; the tb_j partials
  // carry the opposite sign.
  auto row = [&](std::size_t i) {
    const double* wrow = benefit_weights.data() + i * m;
    double sw = 0.0, sp = 0.0, gw = 0.0, gp = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double arg = 2.0 * (ta[i] - tb[j]);
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      cosm[i * m + j] = c;
      sinm[i * m + j] = s;
      sw += c * wrow[j];
      sp += (1.0 - c) * node_weights[j];
      gw += 2.0 * s * wrow[j];
      gp += s * node_weights[j];
    }
    row_payoff[i] = -sw;
    row_prob[i] = 0.5 * sp * node_weights[i];
    g.dpayoff_dta[i] = gw;
    g.dprob_dta[i] = gp * node_weights[i];
  };
  auto col = [&](std::size_t j) {
    double gw = 0.0, gp = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = sinm[i * m + j];
      gw += 2.0 * s * benefit_weights[i * m + j];
      gp += s * node_weights[i];
    }
    g.dpayoff_dtb[j] = -gw;
    g.dprob_dtb[j] = -gp * node_weights[j];
  };
  const auto n = static_cast<std::ptrdiff_t>(m);
  if (backend == Backend::openmp) {
#pragma omp parallel
    {
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
#pragma omp for schedule(static)
      for (std::ptrdiff_t j = 0; j < n; ++j) col(static_cast<std::size_t>(j));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) row(static_cast<std::size_t>(i));
    for (std::ptrdiff_t j = 0; j < n; ++j) col(static_cast<std::size_t>(j));
  }
  for (std::size_t i = 0; i < m; ++i) {
    g.value.payoff += row_payoff[i];
    g.value.split_prob += row_prob[i];
  }
  return g;
}

void sample_benefits(std::uint64_t key, double mu, double c1, double c2,
                     std::span<double> out, Backend backend) {
  const CounterStream stream(key);
  auto one = [&](std::size_t i) {
    const double x1 = stream.exponential(2 * i, mu);
    const double x2 = stream.exponential(2 * i + 1, mu);
    out[i] = c1 * x1 * x2 + c2 * (x1 + x2);
  };
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(static_cast<std::size_t>(i));
  }
}

SignedSums threshold_sums(std::span<const double> w, double tau, Backend backend) {
  const std::size_t n = w.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<SignedSums> partial(chunks);
  auto chunk = [&](std::size_t c) {
    SignedSums s;
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const bool split = w[i] >= tau;
      const double term = split ? w[i] : -w[i];
      s.sum += term;
      s.sum_sq += term * term;
      s.split += split ? 1U : 0U;
    }
    partial[c] = s;
  };
  const auto nc = static_cast<std::ptrdiff_t>(chunks);
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nc; ++c) chunk(static_cast<std::size_t>(c));
  } else {
    for (std::ptrdiff_t c = 0; c < nc; ++c) chunk(static_cast<std::size_t>(c));
  }
  SignedSums total;
  for (const auto& s : partial) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
    total.split += s.split;
  }
  return total;
}

}  // namespace qroute::kernels
