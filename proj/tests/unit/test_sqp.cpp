#include <doctest.h>

#include <cmath>
#include <vector>

#include "qroute/sqp.hpp"

using namespace qroute;

TEST_CASE("quadratic with a linear constraint") {
  // min x^2 + 2 y^2  s.t.  x + y = 3  ->  (2, 1).
  const SqpFunction fn = [](std::span<const double> x) {
    SqpEval e;
    e.f = x[0] * x[0] + 2 * x[1] * x[1];
    e.c = x[0] + x[1] - 3.0;
    e.grad_f = {2 * x[0], 4 * x[1]};
    e.grad_c = {1.0, 1.0};
    return e;
  };
  const SqpResult r = minimize_eq(fn, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(r.at.c) < 1e-12);
}

TEST_CASE("linear objective on a circle") {
  // min x + y  s.t.  x^2 + y^2 = 2  ->  (-1, -1).
  const SqpFunction fn = [](std::span<const double> x) {
    SqpEval e;
    e.f = x[0] + x[1];
    e.c = x[0] * x[0] + x[1] * x[1] - 2.0;
    e.grad_f = {1.0, 1.0};
    e.grad_c = {2 * x[0], 2 * x[1]};
    return e;
  };
  const SqpResult r = minimize_eq(fn, {-0.5, -1.5});
  CHECK(r.x[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(r.x[1] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(std::abs(r.at.c) < 1e-12);
}

TEST_CASE("Rosenbrock on a line") {
  // min (1-x)^2 + 100 (y - x^2)^2  s.t.  x - y = 0  ->  (1, 1).
  const SqpFunction fn = [](std::span<const double> x) {
    SqpEval e;
    const double a = 1 - x[0];
    const double b = x[1] - x[0] * x[0];
    e.f = a * a + 100 * b * b;
    e.c = x[0] - x[1];
    e.grad_f = {-2 * a - 400 * x[0] * b, 200 * b};
    e.grad_c = {1.0, -1.0};
    return e;
  };
  const SqpResult r = minimize_eq(fn, {-1.0, 2.0});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("infeasible start is restored") {
  const SqpFunction fn = [](std::span<const double> x) {
    SqpEval e;
    e.f = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    e.c = std::exp(x[0]) + x[1] - 5.0;
    e.grad_f = {2 * x[0], 2 * x[1], 2 * x[2]};
    e.grad_c = {std::exp(x[0]), 1.0, 0.0};
    return e;
  };
  const SqpResult r = minimize_eq(fn, {4.0, 10.0, 1.0});
  CHECK(std::abs(r.at.c) < 1e-12);
  CHECK(std::abs(r.x[2]) < 1e-8);
}
