#ifndef GSOB_OU_HPP
#define GSOB_OU_HPP

#include <vector>

#include "gsob/integrate.hpp"
#include "gsob/malliavin.hpp"

namespace gsob {

/// Ornstein-Uhlenbeck semigroup P_t. Two deliberately redundant
/// implementations are kept: the Mehler substitution
/// (P_t f)(x) = E[ f(e^{-t} x + sqrt(1-e^{-2t}) Y) ] with the Y-integral done
/// symbolically, and the diagonal action c_alpha -> e^{-|alpha| t} c_alpha on
/// the Hermite expansion. Their agreement (<= 1e-12 relative, the e^{-kt}
/// factors being floating point) is the module's strongest self-test.
NumericPolyFunctional ou_apply(const PolyFunctional& f, double t);
NumericPolyFunctional ou_apply(const NumericPolyFunctional& f, double t);
NumericPolyFunctional ou_apply_diagonal(const PolyFunctional& f, double t);
NumericPolyFunctional ou_apply_diagonal(const NumericPolyFunctional& f, double t);

/// |E[P_t f] - E[f]|.
double ou_mean_preservation_residual(const PolyFunctional& f, double t);

struct PointwiseBound {
  double min_margin = 0.0;  // min over nodes of rhs - lhs
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  std::vector<double> worst_x;
  int nodes_checked = 0;
};

/// Gradient commutation: ||D(P_t F)(x)||^q <= e^{-qt} (P_t ||DF||^q)(x) at
/// every node of an m-per-axis grid. Scalar functionals (J = 1).
PointwiseBound ou_gradient_commutation(const PolyFunctional& f, double t, double q,
                                       int m_outer = 12, const LqOptions& inner = {});

/// Smoothing bound: ||D(P_t F)(x)||^q <=
///   (e^{-t}/sqrt(1-e^{-2t}))^q (E|u|^{qbar})^{q/qbar} (P_t |F|^q)(x),
/// qbar = q/(q-1), for q > 1.
PointwiseBound ou_smoothing_bound(const PolyFunctional& f, double t, double q, int m_outer = 12,
                                  const LqOptions& inner = {});

/// ||P_t f - E[f]||_{L^2} along an increasing t grid, computed through the
/// diagonal action and Parseval. The sequence is non-increasing and decays
/// like e^{-t} for chaos-1-dominated f.
std::vector<double> ou_long_time_residuals(const PolyFunctional& f,
                                           const std::vector<double>& t_grid);

}  // namespace gsob

#endif  // GSOB_OU_HPP
