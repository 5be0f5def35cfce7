#include "gsob/hermite.hpp"

#include <cmath>
#include <mutex>

namespace gsob {

namespace {
std::vector<HermitePoly>& hermite_cache() {
  static std::vector<HermitePoly> cache{
      HermitePoly{0, {Rational(1)}},
      HermitePoly{1, {Rational(0), Rational(1)}},
  };
  return cache;
}
std::mutex hermite_mutex;
}  // namespace

HermitePoly hermite(int k) {
  if (k < 0) throw std::invalid_argument("hermite: order must be >= 0");
  std::lock_guard<std::mutex> lock(hermite_mutex);
  auto& cache = hermite_cache();
  while (static_cast<int>(cache.size()) <= k) {
    int m = static_cast<int>(cache.size());  // building H_m from H_{m-1}, H_{m-2}
    const auto& h1 = cache[m - 1].coefficients;
    const auto& h2 = cache[m - 2].coefficients;
    std::vector<Rational> c(m + 1, Rational(0));
    for (int d = 0; d < m; ++d) c[d + 1] += h1[d];                    // t * H_{m-1}
    for (int d = 0; d < m - 1; ++d) c[d] -= Rational(m - 1) * h2[d];  // -(m-1) H_{m-2}
    cache.push_back(HermitePoly{m, std::move(c)});
  }
  return cache[k];
}

HermitePoly HermitePoly::derivative() const {
  // H_k' = k H_{k-1}, but computed directly from the coefficients so the
  // identity itself stays testable.
  if (degree == 0) return HermitePoly{0, {Rational(0)}};
  HermitePoly d;
  d.degree = degree - 1;
  d.coefficients.resize(degree);
  for (int k = 1; k <= degree; ++k) d.coefficients[k - 1] = coefficients[k] * Rational(k);
  return d;
}

const std::vector<Rational>& monomial_in_hermite(int d) {
  if (d < 0) throw std::invalid_argument("monomial_in_hermite: degree must be >= 0");
  static std::vector<std::vector<Rational>> cache{{Rational(1)}};
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  while (static_cast<int>(cache.size()) <= d) {
    // multiply the expansion of t^{m-1} by t, using t H_j = H_{j+1} + j H_{j-1}
    const auto& prev = cache.back();
    int m1 = static_cast<int>(cache.size());
    std::vector<Rational> next(m1 + 1, Rational(0));
    for (int j = 0; j < m1; ++j) {
      if (sgn(prev[j]) == 0) continue;
      next[j + 1] += prev[j];
      if (j >= 1) next[j - 1] += prev[j] * Rational(j);
    }
    cache.push_back(std::move(next));
  }
  return cache[d];
}

double chaos_identity_residual(const ChaosExpansion<Rational>& e, int k,
                               const Rational& mean_norm_sq) {
  if (k < 0) throw std::invalid_argument("chaos order must be >= 0");
  Rational rhs_sq = Rational(factorial(static_cast<unsigned long>(k))) * e.chaos_l2_sq(k);
  if (mean_norm_sq == rhs_sq) return 0.0;
  return std::abs(std::sqrt(mean_norm_sq.get_d()) - std::sqrt(rhs_sq.get_d()));
}

}  // namespace gsob
