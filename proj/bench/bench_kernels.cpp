// Serial reference vs OpenMP for the hot kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qroute/kernels.hpp"
#include "qroute/model_core.hpp"
#include "qroute/quadrature.hpp"
#include "qroute/rng.hpp"

namespace {

using qroute::kernels::Backend;

Backend backend_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Backend::serial : Backend::openmp;
}

struct Problem {
  std::vector<double> ta, tb, benefit, v;
};

Problem make_problem(std::size_t order) {
  const qroute::SystemParams params = qroute::make_params(0.8, 1.0);
  const qroute::Quadrature q = qroute::gauss_laguerre(order, 1.0);
  Problem pr;
  pr.v = q.weights;
  for (double x : q.nodes) {
    pr.ta.push_back(0.3 + 0.2 * x - 0.01 * x * x);
    pr.tb.push_back(-0.1 + 0.15 * x);
  }
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      pr.benefit.push_back(qroute::splitting_benefit(params, q.nodes[i], q.nodes[j]) *
                           q.weights[i] * q.weights[j]);
    }
  }
  return pr;
}

void BM_CorrelationSums(benchmark::State& state) {
  const Problem pr = make_problem(static_cast<std::size_t>(state.range(1)));
  const Backend b = backend_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qroute::kernels::correlation_sums(pr.ta, pr.tb, pr.benefit, pr.v, b));
  }
}
BENCHMARK(BM_CorrelationSums)->ArgsProduct({{0, 1}, {60, 119}});

void BM_CorrelationGradient(benchmark::State& state) {
  const Problem pr = make_problem(static_cast<std::size_t>(state.range(1)));
  const Backend b = backend_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qroute::kernels::correlation_gradient(pr.ta, pr.tb, pr.benefit, pr.v, b));
  }
}
BENCHMARK(BM_CorrelationGradient)->ArgsProduct({{0, 1}, {60, 119}});

void BM_SampleBenefits(benchmark::State& state) {
  std::vector<double> w(static_cast<std::size_t>(state.range(1)));
  const Backend b = backend_of(state);
  for (auto _ : state) {
    qroute::kernels::sample_benefits(7, 1.0, 2.0, 0.25, w, b);
    benchmark::DoNotOptimize(w.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_SampleBenefits)->ArgsProduct({{0, 1}, {1 << 16, 1 << 20}});

void BM_ThresholdSums(benchmark::State& state) {
  std::vector<double> w(static_cast<std::size_t>(state.range(1)));
  qroute::kernels::sample_benefits(7, 1.0, 2.0, 0.25, w, Backend::serial);
  const Backend b = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(qroute::kernels::threshold_sums(w, 3.0, b));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_ThresholdSums)->ArgsProduct({{0, 1}, {1 << 16, 1 << 20}});

void BM_Map(benchmark::State& state) {
  std::vector<double> xs(static_cast<std::size_t>(state.range(1)));
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.01 * static_cast<double>(i);
  std::vector<double> out(xs.size());
  const Backend b = backend_of(state);
  for (auto _ : state) {
    qroute::kernels::map(xs, out, [](double x) { return std::exp(-x) * std::log1p(x); }, b);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Map)->ArgsProduct({{0, 1}, {5000, 50000}});

}  // namespace

BENCHMARK_MAIN();
