#ifndef GSOB_HERMITE_HPP
#define GSOB_HERMITE_HPP

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "gsob/functional.hpp"
#include "gsob/polynomial.hpp"

namespace gsob {

/// Probabilists' Hermite polynomial H_k in the monomial basis, exact
/// coefficients. Monic; satisfies H_{k+1} = t H_k - k H_{k-1} and
/// H_k' = k H_{k-1}.
struct HermitePoly {
  int degree = 0;
  std::vector<Rational> coefficients;  // coefficients[d] multiplies t^d

  double eval(double t) const {
    double acc = 0.0;
    for (int d = degree; d >= 0; --d) acc = acc * t + coefficients[d].get_d();
    return acc;
  }
  Rational eval_exact(const Rational& t) const {
    Rational acc = 0;
    for (int d = degree; d >= 0; --d) acc = acc * t + coefficients[d];
    return acc;
  }
  HermitePoly derivative() const;
};

/// H_k via the three-term recurrence, exact monomial coefficients.
HermitePoly hermite(int k);

/// Coefficients of t^d in the Hermite basis: t^d = sum_j c_j H_j(t).
const std::vector<Rational>& monomial_in_hermite(int d);

/// H_k(x_var) as an n-variate polynomial.
template <class C>
Poly<C> hermite_as_poly(int k, int dim, int var) {
  HermitePoly h = hermite(k);
  Poly<C> p(dim);
  for (int d = 0; d <= h.degree; ++d) {
    if (sgn(h.coefficients[d]) == 0) continue;
    if constexpr (std::is_same_v<C, Rational>)
      p.add_term(MultiIndex(dim).raised(var, d), h.coefficients[d]);
    else
      p.add_term(MultiIndex(dim).raised(var, d), h.coefficients[d].get_d());
  }
  return p;
}

/// Finitely supported coefficient map alpha -> c_alpha (one value per
/// component for R^J-valued functionals) in the orthogonal basis
/// H_alpha = prod_i H_{alpha_i}(x_i). The carried scale2 has the same meaning
/// as on BasicFunctional.
template <class C>
struct ChaosExpansion {
  int dim = 1;
  int codim = 1;
  C scale2 = C(1);
  std::map<MultiIndex, std::vector<C>, GradedLexLess> coeffs;

  void add(const MultiIndex& alpha, int j, const C& c) {
    if (detail::coeff_is_zero(c)) return;
    auto it = coeffs.find(alpha);
    if (it == coeffs.end()) it = coeffs.emplace(alpha, std::vector<C>(codim, C(0))).first;
    it->second[j] += c;
    bool all_zero = true;
    for (const auto& v : it->second)
      if (!detail::coeff_is_zero(v)) {
        all_zero = false;
        break;
      }
    if (all_zero) coeffs.erase(it);
  }

  /// Squared L^2 norm of the projection onto chaos C_k:
  /// scale2 * sum_{|alpha|=k} alpha! * |c_alpha|^2 (orthogonality
  /// E[H_alpha H_beta] = alpha! delta_{alpha beta}).
  C chaos_l2_sq(int k) const {
    C acc(0);
    for (const auto& [a, cs] : coeffs) {
      if (a.degree() != k) continue;
      C fac;
      if constexpr (std::is_same_v<C, Rational>)
        fac = Rational(a.factorial());
      else
        fac = a.factorial().get_d();
      for (const auto& c : cs) acc += fac * c * c;
    }
    return acc * scale2;
  }

  /// Squared L^2 norm of the whole expansion (Parseval).
  C total_l2_sq() const {
    C acc(0);
    for (const auto& [a, cs] : coeffs) {
      C fac;
      if constexpr (std::is_same_v<C, Rational>)
        fac = Rational(a.factorial());
      else
        fac = a.factorial().get_d();
      for (const auto& c : cs) acc += fac * c * c;
    }
    return acc * scale2;
  }

  int max_order() const {
    int k = 0;
    for (const auto& [a, cs] : coeffs) k = std::max(k, a.degree());
    return k;
  }

  /// f lies in chaos C_l iff every coefficient with |alpha| != l vanishes.
  /// Exact on the rational path, no tolerance involved.
  bool pure_chaos(int l) const {
    for (const auto& [a, cs] : coeffs)
      if (a.degree() != l) return false;
    return true;
  }
};

/// Exact change of basis: monomials -> Hermite products. Round-trips with
/// from_hermite identically.
template <class C>
ChaosExpansion<C> to_hermite(const BasicFunctional<C>& f) {
  ChaosExpansion<C> e;
  e.dim = f.dim;
  e.codim = f.codim;
  e.scale2 = f.scale2;
  for (int j = 0; j < f.codim; ++j) {
    for (const auto& [alpha, c] : f.components[j].terms()) {
      // tensor product of the univariate expansions of each x_i^{alpha_i}
      std::vector<std::pair<MultiIndex, C>> acc{{MultiIndex(f.dim), c}};
      for (int v = 0; v < f.dim; ++v) {
        int d = alpha[v];
        if (d == 0) continue;
        const auto& uni = monomial_in_hermite(d);
        std::vector<std::pair<MultiIndex, C>> next;
        for (const auto& [mi, coef] : acc) {
          for (int h = 0; h <= d; ++h) {
            if (sgn(uni[h]) == 0) continue;
            C u;
            if constexpr (std::is_same_v<C, Rational>)
              u = uni[h];
            else
              u = uni[h].get_d();
            next.emplace_back(mi.raised(v, h), coef * u);
          }
        }
        acc = std::move(next);
      }
      for (const auto& [mi, coef] : acc) e.add(mi, j, coef);
    }
  }
  return e;
}

template <class C>
BasicFunctional<C> from_hermite(const ChaosExpansion<C>& e) {
  BasicFunctional<C> f(e.dim, e.codim);
  f.scale2 = e.scale2;
  for (const auto& [alpha, cs] : e.coeffs) {
    Poly<C> halpha = Poly<C>::constant(e.dim, C(1));
    for (int v = 0; v < e.dim; ++v)
      if (alpha[v] > 0) halpha = halpha * hermite_as_poly<C>(alpha[v], e.dim, v);
    for (int j = 0; j < e.codim; ++j)
      if (!detail::coeff_is_zero(cs[j])) f.components[j] += halpha * cs[j];
  }
  return f;
}

/// J_k F: the orthogonal projection onto the k-th Wiener chaos. For
/// polynomials this is the total-degree-k part of the Hermite expansion.
template <class C>
BasicFunctional<C> project(const BasicFunctional<C>& f, int k) {
  if (k < 0) throw std::invalid_argument("chaos order must be >= 0");
  ChaosExpansion<C> e = to_hermite(f);
  ChaosExpansion<C> slice;
  slice.dim = e.dim;
  slice.codim = e.codim;
  slice.scale2 = e.scale2;
  for (const auto& [a, cs] : e.coeffs)
    if (a.degree() == k) slice.coeffs.emplace(a, cs);
  return from_hermite(slice);
}

/// ||J_k f||_{L^2}, exact up to the final square root.
template <class C>
double l2_norm_chaos(const BasicFunctional<C>& f, int k) {
  return std::sqrt(detail::coeff_to_double(to_hermite(f).chaos_l2_sq(k)));
}

/// | ||E[D^k F]|| - sqrt(k!) ||J_k F|| |. Both sides are compared as exact
/// squared rationals, so the rational path returns literal zero.
/// `mean_norm_sq` must be the exact squared tensor norm of E[D^k F].
double chaos_identity_residual(const ChaosExpansion<Rational>& e, int k,
                               const Rational& mean_norm_sq);

/// Equivalence of L^q norms on a fixed chaos: for f in C_l and 1 < s < r,
/// returns (||f||_{L^r}, ((r-1)/(s-1))^{l/2} ||f||_{L^s}); the first never
/// exceeds the second. The norm oracle is injected so callers control the
/// integration backend.
template <class Oracle>
auto hypercontractivity_ratio(const PolyFunctional& f, int l, double s, double r,
                              Oracle&& q_norm) {
  if (!(1.0 < s && s <= r)) throw std::invalid_argument("need 1 < s <= r");
  if (!to_hermite(f).pure_chaos(l))
    throw std::invalid_argument("functional does not lie in a single chaos");
  auto lhs = q_norm(f, r);
  auto snorm = q_norm(f, s);
  double rhs = std::pow((r - 1.0) / (s - 1.0), l / 2.0) * snorm.value;
  return std::make_pair(lhs, rhs);
}

}  // namespace gsob

#endif  // GSOB_HERMITE_HPP
