#pragma once

// Data-parallel inner loops shared by the certification, quantum and oracle
// modules. Every kernel has an OpenMP implementation and a serial reference
// with the same signature; tests compare the two and bench/ times them.
//
// Results are bit-identical between backends and across thread counts:
// reductions either use order-independent operations (max with lowest-index
// tie-break) or accumulate per-row / per-chunk partials that are combined
// serially in a fixed order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qroute::kernels {

enum class Backend { serial, openmp };

struct ArgMax {
  std::size_t index = 0;
  double value = 0.0;
};

/// Lowest index achieving the maximum. Empty input is a precondition violation.
ArgMax argmax(std::span<const double> values, Backend backend = Backend::openmp);

/// max_i |values[i]|.
double max_abs(std::span<const double> values, Backend backend = Backend::openmp);

/// Applies f to each x and stores the result. f must be thread-safe.
template <class F>
void map(std::span<const double> xs, std::span<double> out, F&& f,
         Backend backend = Backend::openmp) {
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(xs[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(xs[i]);
  }
}

/// Singlet-correlation double sums over a product quadrature.
///
/// With C_ij = cos(2 (ta_i - tb_j)), benefit weights W (row-major, m x m) and
/// probability weights v_i v_j:
///   payoff     = -sum_ij C_ij W_ij
///   split_prob =  sum_ij (1 - C_ij) / 2 * v_i v_j
struct CorrelationSums {
  double payoff = 0.0;
  double split_prob = 0.0;
};

/// Node-wise partial derivatives of CorrelationSums with respect to the
/// angles ta_i and tb_j.
struct CorrelationGradient {
  CorrelationSums value;
  std::vector<double> dpayoff_dta, dprob_dta;
  std::vector<double> dpayoff_dtb, dprob_dtb;
};

CorrelationSums correlation_sums(std::span<const double> ta, std::span<const double> tb,
                                 std::span<const double> benefit_weights,
                                 std::span<const double> node_weights,
                                 Backend backend = Backend::openmp);

CorrelationGradient correlation_gradient(std::span<const double> ta,
                                         std::span<const double> tb,
                                         std::span<const double> benefit_weights,
                                         std::span<const double> node_weights,
                                         Backend backend = Backend::openmp);

/// Fills out[i] = w(X1_i, X2_i) for iid Exp(mu) pairs drawn from the
/// counter-based stream `key` (pair i uses counters 2i and 2i+1).
void sample_benefits(std::uint64_t key, double mu, double c1, double c2,
                     std::span<double> out, Backend backend = Backend::openmp);

/// Sum and sum of squares of the threshold-policy payoff terms -sigma*(w_i) w_i,
/// with sigma* = -1 for w >= tau. Accumulated over fixed-size chunks.
struct SignedSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t split = 0;  ///< number of samples with w >= tau
};

SignedSums threshold_sums(std::span<const double> w, double tau,
                          Backend backend = Backend::openmp);

}  // namespace qroute::kernels
