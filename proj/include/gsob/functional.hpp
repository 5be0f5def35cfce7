#ifndef GSOB_FUNCTIONAL_HPP
#define GSOB_FUNCTIONAL_HPP

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsob/moments.hpp"
#include "gsob/polynomial.hpp"

namespace gsob {

/// Smooth random variable F = sqrt(scale2) * P(W(e_1),...,W(e_n)) with values
/// in R^J. The scale factor keeps coefficients exact after L^2 normalization:
/// dividing by an L^2 norm would introduce square roots, so the square of the
/// normalizing constant is carried separately instead.
template <class C>
struct BasicFunctional {
  int dim = 1;
  int codim = 1;
  std::vector<Poly<C>> components;
  C scale2 = C(1);

  BasicFunctional() = default;
  BasicFunctional(int n, int J) : dim(n), codim(J), components(J, Poly<C>(n)) {
    if (n < 1 || J < 1) throw std::invalid_argument("functional dimensions must be >= 1");
  }
  explicit BasicFunctional(Poly<C> p) : dim(p.dim()), codim(1), components{std::move(p)} {}

  double scale() const { return std::sqrt(detail::coeff_to_double(scale2)); }

  std::vector<double> eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim)
      throw std::invalid_argument("eval: point dimension mismatch");
    std::vector<double> out(codim);
    double s = scale();
    for (int j = 0; j < codim; ++j) out[j] = s * components[j].eval(x);
    return out;
  }

  /// Componentwise formal partial derivative; 1-based index per the external
  /// convention, 0-based overload below.
  BasicFunctional partial(int var) const {
    if (var < 0 || var >= dim) throw std::out_of_range("partial: variable index out of range");
    BasicFunctional r(dim, codim);
    for (int j = 0; j < codim; ++j) r.components[j] = components[j].partial(var);
    r.scale2 = scale2;
    return r;
  }

  int degree() const {
    int d = 0;
    for (const auto& p : components) d = std::max(d, p.degree());
    return d;
  }

  bool is_zero() const {
    for (const auto& p : components)
      if (!p.is_zero()) return false;
    return true;
  }

  BasicFunctional<double> to_numeric() const {
    BasicFunctional<double> r(dim, codim);
    for (int j = 0; j < codim; ++j) r.components[j] = components[j].to_double();
    r.scale2 = detail::coeff_to_double(scale2);
    return r;
  }
};

using PolyFunctional = BasicFunctional<Rational>;
using NumericPolyFunctional = BasicFunctional<double>;

/// Exact squared L^2(gamma_n) norm: scale2 * sum_j E[P_j^2].
inline Rational l2_norm_sq(const PolyFunctional& f) {
  Rational acc = 0;
  for (const auto& p : f.components) acc += gaussian_moment(p * p);
  return acc * f.scale2;
}

inline double l2_norm_sq(const NumericPolyFunctional& f) {
  double acc = 0;
  for (const auto& p : f.components) acc += gaussian_moment(p * p);
  return acc * f.scale2;
}

/// Rescales so that the exact L^2 norm is 1. Throws on the zero functional.
inline PolyFunctional normalized(PolyFunctional f) {
  Rational n2 = l2_norm_sq(f);
  if (sgn(n2) == 0) throw std::invalid_argument("cannot normalize the zero functional");
  f.scale2 /= n2;
  return f;
}

/// f composed with R^T for an orthogonal matrix R (row-major). All gamma_n
/// integrals are invariant under this map, which makes it a useful
/// integration-correctness probe.
NumericPolyFunctional rotate(const PolyFunctional& f, const std::vector<std::vector<double>>& R,
                             double orth_tol = 1e-12);
NumericPolyFunctional rotate(const NumericPolyFunctional& f,
                             const std::vector<std::vector<double>>& R, double orth_tol = 1e-12);

/// Haar-ish random orthogonal matrix (QR of a Gaussian matrix), deterministic
/// per seed.
std::vector<std::vector<double>> random_orthogonal(int n, std::uint64_t seed);

/// Pointwise representative with declared derivative oracles, for functionals
/// that are not polynomials. The evaluator must be total on R^n and of
/// polynomial growth.
struct NumericFunctional {
  int dim = 1;
  int codim = 1;
  std::function<void(std::span<const double>, std::span<double>)> evaluator;
  /// Derivatives available up to this order (0 = values only).
  int oracle_order = 0;
  /// oracle(order, i_1..i_order, j, x); indices 0-based.
  std::function<double(int, const std::vector<int>&, int, std::span<const double>)>
      derivative_oracle;
  double growth_exponent = 0.0;

  std::vector<double> eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim)
      throw std::invalid_argument("eval: point dimension mismatch");
    std::vector<double> out(codim, 0.0);
    evaluator(x, out);
    return out;
  }
};

/// Wraps a polynomial functional as a NumericFunctional with exact oracles.
NumericFunctional as_numeric_functional(const PolyFunctional& f, int oracle_order);

struct CorpusSpec {
  int dim = 1;
  int codim = 1;
  int degree_max = 4;
  int coeff_lo = -5;
  int coeff_hi = 5;
  int count = 20;
  std::uint64_t seed = 42;
};

struct CorpusMember {
  std::string id;
  PolyFunctional f;
};

/// Deterministic corpus: mandatory witnesses (x_1, each Hermite H_k(x_1) up to
/// the degree cap) followed by seeded random polynomials with integer
/// coefficients, all normalized to exact unit L^2 norm.
std::vector<CorpusMember> generate_corpus(const CorpusSpec& spec);

}  // namespace gsob

#endif  // GSOB_FUNCTIONAL_HPP
