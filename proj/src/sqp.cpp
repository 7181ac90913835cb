#include "qroute/sqp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qroute {

namespace {

Eigen::VectorXd as_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> as_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

SqpEval checked(const SqpFunction& fn, const Eigen::VectorXd& x) {
  const std::vector<double> xs = as_std(x);
  SqpEval e = fn(xs);
  if (e.grad_f.size() != xs.size() || e.grad_c.size() != xs.size()) {
    throw std::invalid_argument("gradient length does not match the variable count");
  }
  return e;
}

}  // namespace

SqpResult minimize_eq(const SqpFunction& fn, std::vector<double> x0, const SqpOptions& opt) {
  if (x0.empty()) throw std::invalid_argument("no variables");
  const auto n = static_cast<Eigen::Index>(x0.size());
  Eigen::VectorXd x = as_vec(x0);
  SqpEval e = checked(fn, x);
  Eigen::MatrixXd hess = Eigen::MatrixXd::Identity(n, n);
  double rho = 1.0;

  // Restoration: minimum-norm Gauss-Newton steps on |c| before optimizing.
  for (std::size_t k = 0; k < opt.restore_steps && std::abs(e.c) > opt.feas_tol; ++k) {
    const Eigen::VectorXd gc = as_vec(e.grad_c);
    const double g2 = gc.squaredNorm();
    if (!(g2 > 1e-300)) break;
    double step = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const Eigen::VectorXd trial = x - (step * e.c / g2) * gc;
      SqpEval et = checked(fn, trial);
      if (std::abs(et.c) < std::abs(e.c)) {
        x = trial;
        e = std::move(et);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }

  SqpResult res;
  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    const Eigen::VectorXd gf = as_vec(e.grad_f);
    const Eigen::VectorXd gc = as_vec(e.grad_c);

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = hess;
    kkt.block(0, n, n, 1) = gc;
    kkt.block(n, 0, 1, n) = gc.transpose();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = -gf;
    rhs(n) = -e.c;

    Eigen::VectorXd d;
    double nu = 0.0;
    if (gc.squaredNorm() > 1e-300) {
      const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
      d = sol.head(n);
      nu = sol(n);
    }
    if (d.size() == 0 || !d.allFinite()) {
      d = hess.ldlt().solve(-gf);
      nu = 0.0;
    }

    const double kkt_res = (gf + nu * gc).lpNorm<Eigen::Infinity>();
    if (kkt_res <= opt.kkt_tol * (1.0 + std::abs(e.f)) && std::abs(e.c) <= opt.feas_tol) {
      res.converged = true;
      break;
    }

    rho = std::max(rho, 1.5 * std::abs(nu) + 1e-6);
    const double merit = e.f + rho * std::abs(e.c);
    const double slope = gf.dot(d) - rho * std::abs(e.c);
    if (!(slope < 0.0)) {
      hess.setIdentity();
      if (d.norm() <= 1e-14 * (1.0 + x.norm())) {
        res.converged = std::abs(e.c) <= opt.feas_tol;
        break;
      }
      continue;
    }

    double step = 1.0;
    Eigen::VectorXd x_new;
    SqpEval e_new;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = x + step * d;
      e_new = checked(fn, x_new);
      if (std::isfinite(e_new.f) &&
          e_new.f + rho * std::abs(e_new.c) <= merit + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (hess.isIdentity(1e-14)) break;
      hess.setIdentity();
      continue;
    }

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y =
        (as_vec(e_new.grad_f) + nu * as_vec(e_new.grad_c)) - (gf + nu * gc);
    x = x_new;
    e = std::move(e_new);

    // Powell-damped BFGS keeps the Hessian approximation positive definite.
    const Eigen::VectorXd bs = hess * s;
    const double sbs = s.dot(bs);
    const double sy = s.dot(y);
    if (sbs > 1e-300) {
      const double theta = sy >= 0.2 * sbs ? 1.0 : 0.8 * sbs / (sbs - sy);
      const Eigen::VectorXd r = theta * y + (1.0 - theta) * bs;
      const double sr = s.dot(r);
      if (sr > 1e-300) hess += r * r.transpose() / sr - bs * bs.transpose() / sbs;
    }
    if (s.norm() <= 1e-15 * (1.0 + x.norm()) && std::abs(e.c) <= opt.feas_tol) {
      res.converged = true;
      break;
    }
  }

  // Project back onto the constraint along its gradient.
  for (std::size_t k = 0; k < opt.polish_steps && std::abs(e.c) > opt.feas_tol; ++k) {
    const Eigen::VectorXd gc = as_vec(e.grad_c);
    const double g2 = gc.squaredNorm();
    if (!(g2 > 1e-300)) break;
    x -= (e.c / g2) * gc;
    e = checked(fn, x);
  }

  res.x = as_std(x);
  res.at = std::move(e);
  return res;
}

}  // namespace qroute
