#ifndef GSOB_MOMENTS_HPP
#define GSOB_MOMENTS_HPP

#include "gsob/polynomial.hpp"

namespace gsob {

/// E[t^d] under gamma_1: (d-1)!! for even d, 0 for odd d.
inline Integer gaussian_monomial_moment(int d) {
  if (d % 2 != 0) return 0;
  return double_factorial(d - 1);
}

/// Exact expectation of a polynomial under gamma_n, via the product rule
/// E[prod x_i^{d_i}] = prod E[x^{d_i}].
inline Rational gaussian_moment(const RatPoly& p) {
  Rational acc = 0;
  for (const auto& [a, c] : p.terms()) {
    Integer m = 1;
    bool zero = false;
    for (int v = 0; v < p.dim(); ++v) {
      if (a[v] % 2 != 0) {
        zero = true;
        break;
      }
      m *= gaussian_monomial_moment(a[v]);
    }
    if (!zero) acc += c * Rational(m);
  }
  return acc;
}

/// Same moment rule on float coefficients (used for semigroup images and
/// rotated functionals, whose coefficients are not rational).
inline double gaussian_moment(const DblPoly& p) {
  double acc = 0;
  for (const auto& [a, c] : p.terms()) {
    double m = c;
    bool zero = false;
    for (int v = 0; v < p.dim(); ++v) {
      if (a[v] % 2 != 0) {
        zero = true;
        break;
      }
      m *= gaussian_monomial_moment(a[v]).get_d();
    }
    if (!zero) acc += m;
  }
  return acc;
}

}  // namespace gsob

#endif  // GSOB_MOMENTS_HPP
