#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qroute/quantum_opt.hpp"

using namespace qroute;

namespace {
const SystemParams kParams = make_params(0.8, 1.0);
}

TEST_CASE("angles and correlation") {
  CHECK(correlation(0.3, 0.3) == 1.0);
  CHECK(correlation(M_PI / 2, 0.0) == doctest::Approx(-1.0));
  CHECK(correlation(M_PI / 8, 0.0) == doctest::Approx(std::sqrt(0.5)));
  const std::vector<double> c{1.0, -2.0, 0.5};
  CHECK(polynomial_angle(c, 2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
  CHECK(polynomial_angle(c, 0.0) == 1.0);
}

TEST_CASE("constant angles reduce to a biased coin") {
  const Quadrature q = gauss_laguerre(60, 1.0);
  for (double d : {0.0, 0.3, 0.9, M_PI / 2}) {
    const std::vector<double> a{d};
    const std::vector<double> b{0.0};
    const StrategyValue v = eval_strategy(kParams, a, b, q);
    const double c = std::cos(2 * d);
    CHECK(std::abs(v.p - (1 - c) / 2) <= 1e-13);
    CHECK(v.payoff == doctest::Approx(-c * 2.5).epsilon(1e-12));
  }
}

TEST_CASE("evaluation against direct Monte Carlo sampling") {
  const Quadrature q = gauss_laguerre(60, 1.0);
  const std::vector<double> a{0.1, 0.3, -0.02};
  const std::vector<double> b{-0.2, 0.25, 0.01};
  const StrategyValue v = eval_strategy(kParams, a, b, q);
  Rng rng(12);
  const int n = 400000;
  double s = 0.0;
  double s2 = 0.0;
  double split = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x1 = rng.exponential(1.0);
    const double x2 = rng.exponential(1.0);
    const auto [oa, ob] =
        sample_correlated_outcomes(polynomial_angle(a, x1), polynomial_angle(b, x2), rng);
    const double t = -oa * ob * splitting_benefit(kParams, x1, x2);
    s += t;
    s2 += t * t;
    split += oa != ob ? 1.0 : 0.0;
  }
  const double m = s / n;
  const double se = std::sqrt((s2 / n - m * m) / n);
  CHECK(std::abs(m - v.payoff) < 4 * se);
  CHECK(std::abs(split / n - v.p) < 4 * std::sqrt(v.p * (1 - v.p) / n));
}

TEST_CASE("correlated sampler marginals") {
  Rng rng(2);
  const int n = 200000;
  double ea = 0.0;
  double eab = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [oa, ob] = sample_correlated_outcomes(0.4, -0.1, rng);
    ea += oa;
    eab += oa * ob;
  }
  CHECK(std::abs(ea / n) < 0.01);
  CHECK(eab / n == doctest::Approx(std::cos(1.0)).epsilon(0.02));
}

TEST_CASE("gradient against finite differences") {
  const StrategyEvaluator ev(kParams, gauss_laguerre(40, 1.0));
  std::vector<double> a{0.2, 0.1, -0.01};
  std::vector<double> b{-0.3, 0.2, 0.02};
  const StrategyGradient g = ev.gradient(a, b);
  const double h = 1e-6;
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] += h;
    const StrategyValue up = ev.value(a, b);
    a[k] -= 2 * h;
    const StrategyValue dn = ev.value(a, b);
    a[k] += h;
    CHECK(g.dpayoff_da[k] == doctest::Approx((up.payoff - dn.payoff) / (2 * h)).epsilon(1e-5));
    CHECK(g.dp_da[k] == doctest::Approx((up.p - dn.p) / (2 * h)).epsilon(1e-5));
    b[k] += h;
    const StrategyValue ub = ev.value(a, b);
    b[k] -= 2 * h;
    const StrategyValue db = ev.value(a, b);
    b[k] += h;
    CHECK(g.dpayoff_db[k] == doctest::Approx((ub.payoff - db.payoff) / (2 * h)).epsilon(1e-5));
    CHECK(g.dp_db[k] == doctest::Approx((ub.p - db.p) / (2 * h)).epsilon(1e-5));
  }
  const StrategyValue serial = ev.value(a, b, kernels::Backend::serial);
  CHECK(serial.payoff == ev.value(a, b).payoff);
}

TEST_CASE("degree 0 optimum is the closed form") {
  QuantumOptions opt;
  opt.degree = 0;
  opt.restarts = 4;
  for (double p : {0.1, 0.2, 0.4}) {
    const QuantumStrategy q = optimize_quantum(kParams, p, opt);
    CHECK(q.feasible);
    CHECK(std::abs(q.payoff + (1 - 2 * p) * 2.5) < 1e-6);
  }
}

TEST_CASE("default optimization at p = 0.2") {
  const QuantumStrategy q = optimize_quantum(kParams, 0.2);
  CHECK(q.feasible);
  CHECK(q.constraint_residual < 1e-8);
  CHECK(q.degree == 2);
  CHECK(q.coeffs_a.size() == 3);
  CHECK(q.restarts_used == 20);
  CHECK(q.payoff > 0.1);
  // Regression pin.
  CHECK(q.payoff == doctest::Approx(0.107574).epsilon(1e-5));
  const StrategyValue v = eval_strategy(kParams, q.coeffs_a, q.coeffs_b, gauss_laguerre(60, 1.0));
  CHECK(v.payoff == doctest::Approx(q.payoff).epsilon(1e-12));
  CHECK(std::abs(v.p - 0.2) < 1e-8);
}

TEST_CASE("optimization is independent of the thread count") {
  QuantumOptions opt;
  opt.restarts = 5;
  opt.seed = 3;
  omp_set_num_threads(1);
  const QuantumStrategy a = optimize_quantum(kParams, 0.3, opt);
  omp_set_num_threads(3);
  const QuantumStrategy b = optimize_quantum(kParams, 0.3, opt);
  omp_set_num_threads(1);
  CHECK(a.payoff == b.payoff);
  CHECK(a.coeffs_a == b.coeffs_a);
  CHECK(a.coeffs_b == b.coeffs_b);
  CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("input validation") {
  QuantumOptions opt;
  opt.restarts = 0;
  CHECK_THROWS_AS(optimize_quantum(kParams, 0.2, opt), std::invalid_argument);
  CHECK_THROWS_AS(optimize_quantum(kParams, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_quantum(kParams, 1.0), std::invalid_argument);
  const Quadrature q = gauss_laguerre(10, 1.0);
  const std::vector<double> a{0.1, 0.2};
  const std::vector<double> b{0.1};
  const std::vector<double> none;
  CHECK_THROWS_AS(eval_strategy(kParams, a, b, q), std::invalid_argument);
  CHECK_THROWS_AS(eval_strategy(kParams, none, none, q), std::invalid_argument);
  CHECK_THROWS_AS(eval_strategy(kParams, b, b, gauss_laguerre(10, 2.0)), std::invalid_argument);
}
