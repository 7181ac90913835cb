#pragma once

#include <cstddef>
#include <vector>

namespace qroute {

/// Quadrature rule for expectations under Exp(mu): E[f(X)] ~ sum_i w_i f(x_i).
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;  ///< probability weights, sum to 1
  double mu = 1.0;
  std::size_t order = 0;
};

/// Largest accepted Gauss-Laguerre order; weights of higher orders leave the
/// double range.
inline constexpr std::size_t kMaxLaguerreOrder = 119;

/// Gauss-Laguerre rule rescaled to the Exp(mu) density. Nodes come from the
/// Golub-Welsch eigenproblem of the Laguerre Jacobi matrix and are polished by
/// Newton steps on L_n; weights use x / ((n+1)^2 L_{n+1}(x)^2). Exact for
/// polynomials of degree <= 2 order - 1.
///
/// Throws std::invalid_argument for order < 2, order > kMaxLaguerreOrder or
/// mu <= 0.
Quadrature gauss_laguerre(std::size_t order, double mu);

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b] (weights sum to b - a).
Rule gauss_legendre(std::size_t order, double a, double b);

/// Composite Gauss-Legendre: `panels` equal sub-intervals of [a, b].
Rule composite_gauss_legendre(std::size_t order, std::size_t panels, double a, double b);

}  // namespace qroute
