#include "qroute/quantum_opt.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "qroute/sqp.hpp"

namespace qroute {

double correlation(double theta_a, double theta_b) noexcept {
  return std::cos(2.0 * (theta_a - theta_b));
}

double polynomial_angle(std::span<const double> coeffs, double x) noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

StrategyEvaluator::StrategyEvaluator(const SystemParams& params, Quadrature quad)
    : quad_(std::move(quad)) {
  if (std::abs(quad_.mu - params.mu) > 1e-12 * params.mu) {
    throw std::invalid_argument("quadrature rule was built for a different service rate");
  }
  const std::size_t m = quad_.nodes.size();
  benefit_.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      benefit_[i * m + j] = splitting_benefit(params, quad_.nodes[i], quad_.nodes[j]) *
                            quad_.weights[i] * quad_.weights[j];
    }
  }
}

void StrategyEvaluator::angles(std::span<const double> sa, std::span<const double> sb,
                               std::vector<double>& ta, std::vector<double>& tb) const {
  if (sa.empty() || sa.size() != sb.size()) {
    throw std::invalid_argument("coefficient vectors must be non-empty and of equal length");
  }
  const std::size_t m = quad_.nodes.size();
  ta.resize(m);
  tb.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    ta[i] = polynomial_angle(sa, quad_.nodes[i]);
    tb[i] = polynomial_angle(sb, quad_.nodes[i]);
  }
}

StrategyValue StrategyEvaluator::value(std::span<const double> sa, std::span<const double> sb,
                                       kernels::Backend backend) const {
  std::vector<double> ta, tb;
  angles(sa, sb, ta, tb);
  const auto s = kernels::correlation_sums(ta, tb, benefit_, quad_.weights, backend);
  return {s.payoff, s.split_prob};
}

StrategyGradient StrategyEvaluator::gradient(std::span<const double> sa,
                                             std::span<const double> sb,
                                             kernels::Backend backend) const {
  std::vector<double> ta, tb;
  angles(sa, sb, ta, tb);
  const auto g = kernels::correlation_gradient(ta, tb, benefit_, quad_.weights, backend);
  const std::size_t k = sa.size();
  StrategyGradient out;
  out.value = {g.value.payoff, g.value.split_prob};
  out.dpayoff_da.assign(k, 0.0);
  out.dpayoff_db.assign(k, 0.0);
  out.dp_da.assign(k, 0.0);
  out.dp_db.assign(k, 0.0);
  for (std::size_t i = 0; i < quad_.nodes.size(); ++i) {
    double xp = 1.0;
    for (std::size_t d = 0; d < k; ++d) {
      out.dpayoff_da[d] += xp * g.dpayoff_dta[i];
      out.dpayoff_db[d] += xp * g.dpayoff_dtb[i];
      out.dp_da[d] += xp * g.dprob_dta[i];
      out.dp_db[d] += xp * g.dprob_dtb[i];
      xp *= quad_.nodes[i];
    }
  }
  return out;
}

StrategyValue eval_strategy(const SystemParams& params, std::span<const double> sa,
                            std::span<const double> sb, const Quadrature& quad) {
  return StrategyEvaluator(params, quad).value(sa, sb, kernels::Backend::serial);
}

namespace {

struct RestartResult {
  std::vector<double> a, b;
  StrategyValue value;
  double residual = 0.0;
};

bool better(const RestartResult& cand, const RestartResult& cur, double tol) {
  const bool cf = cand.residual <= tol;
  const bool uf = cur.residual <= tol;
  if (cf != uf) return cf;
  if (!cf) return cand.residual < cur.residual;
  return cand.value.payoff > cur.value.payoff;
}

// One restart. The random coefficients are introduced one degree at a time:
// stage d re-optimizes all coefficients up to degree d, starting both from
// the drawn values and from zero for the new pair, and keeps the better end
// point. Starting every coefficient at once lands in poor local optima for
// most draws.
RestartResult run_restart(const SystemParams& params, const Quadrature& quad, double p_target,
                          const QuantumOptions& opt, std::size_t r) {
  const std::size_t n = opt.degree + 1;
  const double mu = params.mu;
  Rng rng(derive_key(derive_key(opt.seed, "quantum-restart"), r));
  std::vector<double> draw_a(n), draw_b(n);
  draw_a[0] = rng.uniform(-std::numbers::pi, std::numbers::pi);
  draw_b[0] = rng.uniform(-std::numbers::pi, std::numbers::pi);
  for (std::size_t d = 1; d < n; ++d) {
    draw_a[d] = rng.uniform(-1.0, 1.0);
    draw_b[d] = rng.uniform(-1.0, 1.0);
  }

  SqpOptions sopt;
  sopt.max_iter = opt.max_iter;
  const StrategyEvaluator ev(params, quad);

  // Optimize in scaled coordinates z_d = a_d / mu^d so every coefficient
  // moves the angle by O(1) over the bulk of Exp(mu).
  auto solve = [&](std::size_t k, std::vector<double> z0) {
    std::vector<double> scale(k);
    for (std::size_t d = 0; d < k; ++d) scale[d] = std::pow(mu, static_cast<double>(d));
    auto unpack = [&](std::span<const double> z, std::vector<double>& a, std::vector<double>& b) {
      a.resize(k);
      b.resize(k);
      for (std::size_t d = 0; d < k; ++d) {
        a[d] = z[d] * scale[d];
        b[d] = z[k + d] * scale[d];
      }
    };
    const SqpFunction fn = [&](std::span<const double> z) {
      std::vector<double> a, b;
      unpack(z, a, b);
      const StrategyGradient g = ev.gradient(a, b, kernels::Backend::serial);
      SqpEval e;
      e.f = -g.value.payoff;
      e.c = g.value.p - p_target;
      e.grad_f.resize(2 * k);
      e.grad_c.resize(2 * k);
      for (std::size_t d = 0; d < k; ++d) {
        e.grad_f[d] = -g.dpayoff_da[d] * scale[d];
        e.grad_f[k + d] = -g.dpayoff_db[d] * scale[d];
        e.grad_c[d] = g.dp_da[d] * scale[d];
        e.grad_c[k + d] = g.dp_db[d] * scale[d];
      }
      return e;
    };
    const SqpResult res = minimize_eq(fn, std::move(z0), sopt);
    RestartResult out;
    unpack(res.x, out.a, out.b);
    out.value = ev.value(out.a, out.b, kernels::Backend::serial);
    out.residual = std::abs(out.value.p - p_target);
    return out;
  };

  auto start = [&](const RestartResult* prev, std::size_t k, bool zero_new) {
    std::vector<double> z(2 * k);
    for (std::size_t d = 0; d < k; ++d) {
      const double sc = std::pow(mu, static_cast<double>(d));
      const bool fresh = prev == nullptr || d + 1 == k;
      const double za = fresh ? (zero_new ? 0.0 : draw_a[d] / sc) : prev->a[d] / sc;
      const double zb = fresh ? (zero_new ? 0.0 : draw_b[d] / sc) : prev->b[d] / sc;
      z[d] = za;
      z[k + d] = zb;
    }
    return z;
  };

  RestartResult cur = solve(1, start(nullptr, 1, false));
  for (std::size_t k = 2; k <= n; ++k) {
    RestartResult drawn = solve(k, start(&cur, k, false));
    RestartResult zeroed = solve(k, start(&cur, k, true));
    cur = better(zeroed, drawn, opt.tolerance) ? std::move(zeroed) : std::move(drawn);
  }
  return cur;
}

}  // namespace

QuantumStrategy optimize_quantum(const SystemParams& params, double p_target,
                                 const QuantumOptions& opt) {
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw std::invalid_argument("target splitting probability must lie in (0, 1)");
  }
  if (opt.restarts == 0) throw std::invalid_argument("need at least one restart");
  const Quadrature quad = gauss_laguerre(opt.quad_order, params.mu);

  std::vector<RestartResult> results(opt.restarts);
  std::vector<std::exception_ptr> errors(opt.restarts);
  const auto n = static_cast<std::ptrdiff_t>(opt.restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      results[idx] = run_restart(params, quad, p_target, opt, idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  QuantumStrategy best;
  best.degree = opt.degree;
  best.p_target = p_target;
  best.seed = opt.seed;
  best.restarts_used = opt.restarts;
  std::size_t pick = 0;
  bool any = false;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].residual > opt.tolerance) continue;
    ++best.feasible_restarts;
    if (!any || results[r].value.payoff > results[pick].value.payoff) {
      pick = r;
      any = true;
    }
  }
  if (!any) {
    for (std::size_t r = 1; r < results.size(); ++r) {
      if (results[r].residual < results[pick].residual) pick = r;
    }
  }
  const RestartResult& w = results[pick];
  best.coeffs_a = w.a;
  best.coeffs_b = w.b;
  best.payoff = w.value.payoff;
  best.p_achieved = w.value.p;
  best.constraint_residual = w.residual;
  best.best_restart = pick;
  best.feasible = any;
  return best;
}

std::pair<int, int> sample_correlated_outcomes(double theta_a, double theta_b, Rng& rng) {
  const int oa = rng.sign();
  const double same = 0.5 * (1.0 + correlation(theta_a, theta_b));
  const int ob = rng.uniform() < same ? oa : -oa;
  return {oa, ob};
}

}  // namespace qroute
