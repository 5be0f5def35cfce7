#ifndef GSOB_QUADRATURE_HPP
#define GSOB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace gsob {

/// Tensorized Gauss-Hermite rule for the standard Gaussian measure gamma_n.
/// Nodes are computed for the weight e^{-x^2} (Golub-Welsch) and rescaled by
/// sqrt(2) to the probabilists' convention; weights are normalized to sum to 1
/// per axis, which keeps all pi factors out of the bookkeeping.
struct QuadratureGrid {
  int dim = 1;
  int nodes_per_axis = 0;
  std::vector<double> nodes;    // per-axis nodes, shared across axes
  std::vector<double> weights;  // per-axis weights, sum to 1

  static QuadratureGrid make(int dim, int m);

  /// Iterates the tensor grid, calling visit(point, weight) for every node of
  /// the n-fold product rule.
  void for_each(const std::function<void(const double*, double)>& visit) const;

  /// 1-D integral of f against gamma_1 with this rule.
  double integrate_1d(const std::function<double(double)>& f) const;
};

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval; returns the value and
/// accumulates an error estimate. Splits recursively until the local estimate
/// is below tol (absolute + relative mix).
double adaptive_gk(const std::function<double(double)>& f, double a, double b, double tol,
                   double* err_out = nullptr, int max_depth = 32);

/// Real roots of a univariate polynomial (monomial coefficients, c[0] + c[1] t
/// + ...) inside [lo, hi], found by sign-change scanning plus bisection.
/// Intended for integrand splitting: near-misses only cost accuracy, not
/// correctness.
std::vector<double> real_roots_in(const std::vector<double>& coeffs, double lo, double hi);

}  // namespace gsob

#endif  // GSOB_QUADRATURE_HPP
