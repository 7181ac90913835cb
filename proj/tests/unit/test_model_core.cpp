#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qroute/model_core.hpp"
#include "qroute/rng.hpp"

using namespace qroute;

TEST_CASE("derived constants at lambda 0.8, mu 1") {
  const SystemParams p = make_params(0.8, 1.0);
  CHECK(p.rho == doctest::Approx(0.8));
  CHECK(p.c1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.c2 == 0.25);
  CHECK(p.wq_const == doctest::Approx(6.5).epsilon(1e-14));
  CHECK(p.mean_benefit() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(splitting_benefit(p, 1.0, 2.0) == doctest::Approx(2.0 * 2.0 + 0.75));
}

TEST_CASE("always-bunch constant from the batch Pollaczek-Khinchine formula") {
  for (double lambda : {0.1, 0.4, 0.8, 0.95}) {
    for (double mu : {0.5, 1.0, 3.0}) {
      if (lambda >= mu) continue;
      const SystemParams p = make_params(lambda, mu);
      // Each server sees pairs at rate lambda / 2; the batch total S is Gamma(2, mu).
      const double big_lambda = lambda / 2.0;
      const double es = 2.0 / mu;
      const double es2 = 6.0 / (mu * mu);
      const double rho = big_lambda * es;
      const double virtual_wait = big_lambda * es2 / (2.0 * (1.0 - rho));
      const double within_batch = 0.5 / mu;  // half the customers wait one Exp(mu)
      CHECK(p.wq_const == doctest::Approx(virtual_wait + within_batch).epsilon(1e-13));
      // Always split: two independent M/M/1 queues.
      CHECK(waiting_time_from_split_weight(p, p.mean_benefit()) ==
            doctest::Approx(lambda / (mu * (mu - lambda))).epsilon(1e-13));
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_params(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("order statistic moments") {
  for (double mu : {0.5, 1.0, 2.0}) {
    const OrderStatMoments m = exp_order_stat_moments(mu);
    CHECK(m.e_min == 1.0 / (2.0 * mu));
    CHECK(m.e_min_sq == 1.0 / (2.0 * mu * mu));
    CHECK(m.e_max == 3.0 / (2.0 * mu));
    CHECK(m.e_max_sq == 7.0 / (2.0 * mu * mu));
  }
}

TEST_CASE("order statistic moments against Monte Carlo") {
  const double mu = 1.5;
  Rng rng(17);
  const int n = 200000;
  double s[4] = {0, 0, 0, 0};
  for (int i = 0; i < n; ++i) {
    const double a = rng.exponential(mu);
    const double b = rng.exponential(mu);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    s[0] += lo;
    s[1] += lo * lo;
    s[2] += hi;
    s[3] += hi * hi;
  }
  const OrderStatMoments m = exp_order_stat_moments(mu);
  CHECK(s[0] / n == doctest::Approx(m.e_min).epsilon(0.01));
  CHECK(s[1] / n == doctest::Approx(m.e_min_sq).epsilon(0.02));
  CHECK(s[2] / n == doctest::Approx(m.e_max).epsilon(0.01));
  CHECK(s[3] / n == doctest::Approx(m.e_max_sq).epsilon(0.02));
}

TEST_CASE("delta_wq") {
  CHECK(delta_wq(1.0, 0.4) == doctest::Approx(0.3));
  CHECK(delta_wq(1.0, 1.0) == 0.0);
  // Inside the tolerance the small negative value is returned as is.
  CHECK(delta_wq(1.0, 1.0 + 5e-7) == doctest::Approx(-2.5e-7));
  CHECK_THROWS_AS(delta_wq(1.0, 1.1), InconsistentPayoff);
  CHECK_NOTHROW(delta_wq(1.0, 1.1, 0.2));
}

TEST_CASE("waiting time is affine in the split weight") {
  const SystemParams p = make_params(0.8, 1.0);
  CHECK(waiting_time_from_split_weight(p, 0.0) == doctest::Approx(6.5));
  CHECK(waiting_time_from_split_weight(p, 2.5) == doctest::Approx(4.0));
  // Payoff A = 2 E[rw] - E[w]; the wait difference of two policies is half the payoff gap.
  const double a1 = 0.3;
  const double a2 = -0.2;
  const double w1 = waiting_time_from_split_weight(p, (a1 + 2.5) / 2.0);
  const double w2 = waiting_time_from_split_weight(p, (a2 + 2.5) / 2.0);
  CHECK(w2 - w1 == doctest::Approx(delta_wq(a1, a2)));
}
