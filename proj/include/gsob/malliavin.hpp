#ifndef GSOB_MALLIAVIN_HPP
#define GSOB_MALLIAVIN_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsob/hermite.hpp"
#include "gsob/integrate.hpp"

namespace gsob {

/// Order-l tensor field of partial derivatives realizing D^l F, with entry
/// (i_1,...,i_l, j) = d^l f_j / dx_{i_1}...dx_{i_l}. Entries are symmetric
/// under permutation of the i's (Schwarz), and the order-0 tensor is F itself.
template <class C>
struct DerivativeTensor {
  int order = 0;
  int dim = 1;
  int codim = 1;
  C scale2 = C(1);
  std::vector<Poly<C>> entries;  // flattened, i-tuple major, component j last

  size_t flat_index(std::span<const int> idx, int j) const {
    size_t f = 0;
    for (int v : idx) {
      if (v < 0 || v >= dim) throw std::out_of_range("tensor index out of range");
      f = f * dim + static_cast<size_t>(v);
    }
    return f * codim + static_cast<size_t>(j);
  }

  const Poly<C>& entry(std::span<const int> idx, int j) const {
    if (static_cast<int>(idx.size()) != order)
      throw std::invalid_argument("tensor index arity mismatch");
    return entries[flat_index(idx, j)];
  }

  /// Pointwise Hilbert-Schmidt norm (Frobenius over all indices, including
  /// the R^J one).
  double hs_norm_pointwise(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim) throw std::invalid_argument("point dimension mismatch");
    double sos = 0.0;
    for (const auto& p : entries) {
      double v = p.eval(x);
      sos += v * v;
    }
    return std::sqrt(sos * detail::coeff_to_double(scale2));
  }

  /// Distinct entries under index-permutation symmetry, with multiplicities;
  /// cuts integration cost on higher-order tensors.
  void distinct_components(std::vector<const Poly<C>*>& comps, std::vector<double>& mults) const {
    comps.clear();
    mults.clear();
    std::vector<int> idx(order, 0);
    std::map<std::vector<int>, size_t> seen;  // sorted tuple -> comps slot base
    while (true) {
      std::vector<int> key = idx;
      std::sort(key.begin(), key.end());
      auto it = seen.find(key);
      if (it == seen.end()) {
        size_t base = comps.size();
        seen.emplace(std::move(key), base);
        for (int j = 0; j < codim; ++j) {
          comps.push_back(&entries[flat_index(idx, j)]);
          mults.push_back(1.0);
        }
      } else {
        for (int j = 0; j < codim; ++j) mults[it->second + j] += 1.0;
      }
      int v = 0;
      for (; v < order; ++v) {
        if (++idx[v] < dim) break;
        idx[v] = 0;
      }
      if (v == order) break;
    }
  }
};

/// D^l F on the polynomial path: exact repeated partials.
template <class C>
DerivativeTensor<C> derivative(const BasicFunctional<C>& f, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  DerivativeTensor<C> t;
  t.order = order;
  t.dim = f.dim;
  t.codim = f.codim;
  t.scale2 = f.scale2;
  if (order == 0) {
    t.entries = f.components;
    return t;
  }
  DerivativeTensor<C> prev = derivative(f, order - 1);
  size_t prev_tuples = prev.entries.size() / f.codim;
  t.entries.reserve(prev_tuples * f.dim * f.codim);
  // new leading index varies slowest to keep the i-tuple-major layout
  for (size_t tuple = 0; tuple < prev_tuples * f.dim; ++tuple) {
    size_t rest = tuple % prev_tuples;
    int lead = static_cast<int>(tuple / prev_tuples);
    for (int j = 0; j < f.codim; ++j)
      t.entries.push_back(prev.entries[rest * f.codim + j].partial(lead));
  }
  return t;
}

/// Constant tensor E[D^l F] with exact rational entries (before the
/// sqrt(scale2) factor, which is carried alongside).
struct MeanTensor {
  int order = 0;
  int dim = 1;
  int codim = 1;
  Rational scale2 = Rational(1);
  std::vector<Rational> entries;

  /// Exact squared norm in H^{otimes l} (x) R^J.
  Rational norm_sq() const {
    Rational acc = 0;
    for (const auto& e : entries) acc += e * e;
    return acc * scale2;
  }
  double norm() const { return std::sqrt(norm_sq().get_d()); }
};

MeanTensor mean_derivative(const PolyFunctional& f, int order);

/// | ||E[D^k F]|| - sqrt(k!) ||J_k F|| |, compared as exact squared rationals
/// so the rational path returns literal zero.
double chaos_identity_check(const PolyFunctional& f, int k, const MeanTensor& mean);

struct SobolevNormRequest {
  enum class Kind { full, graph, single };
  int k = 1;
  double q = 2.0;
  Kind kind = Kind::full;
  int single_order = 1;  // used when kind == single
  LqOptions integration;
};

struct NormValue {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Entry of D^l F for a pointwise-represented functional; requires a declared
/// derivative oracle of the needed order.
inline double numeric_derivative_entry(const NumericFunctional& f, int order,
                                       const std::vector<int>& idx, int j,
                                       std::span<const double> x) {
  if (order == 0) return f.eval(x)[j];
  if (order > f.oracle_order || !f.derivative_oracle)
    throw std::invalid_argument("numeric functional declares no order-" + std::to_string(order) +
                                " derivative oracle");
  return f.derivative_oracle(order, idx, j, x);
}

/// ||D^l F||_{L^q(Omega; H^{otimes l} (x) R^J)}; order 0 is the plain L^q norm.
IntegralResult derivative_lq_norm(const PolyFunctional& f, int order, double q,
                                  const LqOptions& opt = {});
IntegralResult derivative_lq_norm(const NumericPolyFunctional& f, int order, double q,
                                  const LqOptions& opt = {});

/// Full norm: (||F||_q^q + sum_{l<=k} ||D^l F||_q^q)^{1/q}.
/// Graph norm: ||F||_q + ||D^k F||_q (top derivative only).
NormValue sobolev_norm(const PolyFunctional& f, const SobolevNormRequest& req);

}  // namespace gsob

#endif  // GSOB_MALLIAVIN_HPP
