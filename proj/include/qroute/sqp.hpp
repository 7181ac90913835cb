#pragma once

// Small dense SQP for  min f(x)  s.t.  c(x) = 0  with one equality
// constraint. Damped BFGS on the Lagrangian Hessian, L1 merit line search.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qroute {

struct SqpEval {
  double f = 0.0;
  double c = 0.0;
  std::vector<double> grad_f;
  std::vector<double> grad_c;
};

using SqpFunction = std::function<SqpEval(std::span<const double>)>;

struct SqpOptions {
  std::size_t max_iter = 400;
  double kkt_tol = 1e-10;
  double feas_tol = 1e-12;
  std::size_t polish_steps = 20;
  std::size_t restore_steps = 50;
};

struct SqpResult {
  std::vector<double> x;
  SqpEval at;
  std::size_t iterations = 0;
  bool converged = false;
};

SqpResult minimize_eq(const SqpFunction& fn, std::vector<double> x0, const SqpOptions& opt = {});

}  // namespace qroute
