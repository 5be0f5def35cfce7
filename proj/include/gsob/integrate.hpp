#ifndef GSOB_INTEGRATE_HPP
#define GSOB_INTEGRATE_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gsob/functional.hpp"
#include "gsob/moments.hpp"
#include "gsob/quadrature.hpp"

namespace gsob {

struct IntegralResult {
  enum class Method { symbolic, quadrature, monte_carlo };

  double value = 0.0;
  Method method = Method::quadrature;
  double error_estimate = 0.0;
  /// (refinement parameter, value) pairs retained as evidence; for tensor
  /// grids the parameter is the per-axis node count.
  std::vector<std::pair<int, double>> refinement_history;
  bool converged = true;

  const char* method_name() const {
    switch (method) {
      case Method::symbolic: return "symbolic";
      case Method::quadrature: return "quadrature";
      case Method::monte_carlo: return "monte-carlo";
    }
    return "?";
  }
};

struct LqOptions {
  double tol = 1e-8;
  int m_start = 8;
  int m_max = 128;
  /// Dimensions above this delegate to Monte Carlo (tensor grids explode).
  int mc_dim_threshold = 6;
  long mc_samples = 1000000;
  std::uint64_t mc_seed = 0x9e3779b97f4a7c15ULL;
  /// Used by agreement tests to bypass the symbolic even-q shortcut.
  bool force_quadrature = false;
};

/// Exact componentwise expectation (before the sqrt(scale2) factor).
inline std::vector<Rational> mean_exact(const PolyFunctional& f) {
  std::vector<Rational> out;
  out.reserve(f.components.size());
  for (const auto& p : f.components) out.push_back(gaussian_moment(p));
  return out;
}

/// ( E[ ||F||_{R^J}^q ] )^{1/q}. Dispatch: exact symbolic for even integer q
/// on polynomials; root-split line integration for one effective variable;
/// hybrid line x tensor-grid doubling otherwise; Monte Carlo above the
/// dimension threshold.
IntegralResult lq_norm(const PolyFunctional& f, double q, const LqOptions& opt = {});
IntegralResult lq_norm(const NumericPolyFunctional& f, double q, const LqOptions& opt = {});
IntegralResult lq_norm(const NumericFunctional& f, double q, const LqOptions& opt = {});

/// Shared engines over raw component lists (used for derivative tensors):
/// the pointwise Euclidean norm is sqrt(scale2 * sum_j mults_j * P_j(x)^2),
/// with `mults` carrying symmetric-entry multiplicities (empty = all 1).
IntegralResult lq_norm_components(const std::vector<const RatPoly*>& comps, const Rational& scale2,
                                  double q, const LqOptions& opt = {},
                                  const std::vector<double>& mults = {});
IntegralResult lq_norm_components(const std::vector<const DblPoly*>& comps, double scale2,
                                  double q, const LqOptions& opt = {},
                                  const std::vector<double>& mults = {});

/// Seeded Monte Carlo estimate with a standard-error estimate.
IntegralResult lq_norm_mc(const PolyFunctional& f, double q, long samples, std::uint64_t seed);
IntegralResult lq_norm_mc(const NumericFunctional& f, double q, long samples, std::uint64_t seed);

enum class IntervalWeight { lebesgue, gaussian };

/// Adaptive 1-D integral of g over [a,b] with the stated weight; b may be
/// +infinity for the gaussian weight. Optional split points mark known kinks.
double halfline_interval_integral(const std::function<double(double)>& g, double a, double b,
                                  IntervalWeight weight, double tol = 1e-10,
                                  const std::vector<double>& splits = {},
                                  double* err_out = nullptr);

}  // namespace gsob

#endif  // GSOB_INTEGRATE_HPP
