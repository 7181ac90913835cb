#include "qroute/model_core.hpp"

#include <cmath>
#include <sstream>

namespace qroute {

SystemParams make_params(double lambda, double mu) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("arrival rate must be positive and finite");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("service rate must be positive and finite");
  }
  const double rho = lambda / mu;
  if (!(rho < 1.0)) {
    std::ostringstream os;
    os << "unstable system: rho = " << rho << " >= 1";
    throw std::invalid_argument(os.str());
  }
  SystemParams p;
  p.lambda = lambda;
  p.mu = mu;
  p.rho = rho;
  p.c1 = lambda / (2.0 * (1.0 - rho));
  p.c2 = 0.25;
  const double es = 2.0 / mu;
  const double es2 = 6.0 / (mu * mu);
  p.wq_const = lambda * es2 / (4.0 * (1.0 - rho)) + es / 4.0;
  return p;
}

OrderStatMoments exp_order_stat_moments(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("service rate must be positive");
  // min ~ Exp(2 mu); max has density 2 mu (e^{-mu t} - e^{-2 mu t}).
  return OrderStatMoments{
      1.0 / (2.0 * mu),
      1.0 / (2.0 * mu * mu),
      3.0 / (2.0 * mu),
      7.0 / (2.0 * mu * mu),
  };
}

double waiting_time_from_split_weight(const SystemParams& params, double expected_rw) {
  return params.wq_const - expected_rw;
}

double delta_wq(double a_star, double a, double tolerance) {
  if (a > a_star + tolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "payoff " << a << " exceeds optimum " << a_star << " by more than " << tolerance;
    throw InconsistentPayoff(os.str());
  }
  return (a_star - a) / 2.0;
}

}  // namespace qroute
