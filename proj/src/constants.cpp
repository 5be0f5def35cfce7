#include "gsob/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace gsob::constants {

double c_poincare(double q) {
  if (q < 1.0) throw std::domain_error("c_poincare: q must be >= 1");
  if (q >= 2.0) return std::sqrt(q - 1.0);
  return M_PI / 2.0;
}

double d_expected(int l, double q) {
  if (l < 1) throw std::domain_error("d_expected: l must be >= 1");
  if (q <= 1.0)
    throw std::domain_error(
        "d_expected: the bound ||E[D^l F]|| <= d ||F||_{L^q} holds only for q > 1; "
        "at q = 1 no finite constant works (the chaos projection J_l is unbounded on L^1)");
  double sqrt_lfac = std::exp(0.5 * std::lgamma(l + 1.0));
  if (q >= 2.0) return sqrt_lfac;
  double qbar = q / (q - 1.0);
  return sqrt_lfac * std::pow(qbar - 1.0, l / 2.0);
}

double tau_equivalence(int k, double q) {
  if (k < 2) throw std::domain_error("tau_equivalence: k must be >= 2");
  if (q <= 1.0) throw std::domain_error("tau_equivalence: q must be > 1");
  double prod = 1.0;
  double cq = c_poincare(q);
  for (int l = 1; l <= k - 1; ++l) prod *= 1.0 + std::max(d_expected(l, q), cq);
  return prod;
}

double eta_l1() { return M_PI / 2.0 + 18.0 * std::sqrt(2.0 * M_E); }

namespace {
// sum_{m=1}^{top} l!/(l-m)!
double falling_factorial_sum(int l, int top) {
  double acc = 0.0, ff = 1.0;
  for (int m = 1; m <= top; ++m) {
    ff *= (l - m + 1);
    acc += ff;
  }
  return acc;
}
}  // namespace

double log_C_finite_dim(int l, int n) {
  if (l < 1 || n < 1) throw std::domain_error("C_finite_dim: l, n must be >= 1");
  double log_c1 = std::log(18.0 * std::sqrt(M_E) * n);
  if (l == 1) return log_c1;
  return falling_factorial_sum(l, l - 1) * std::log(2.0) + falling_factorial_sum(l, l) * log_c1;
}

double C_finite_dim(int l, int n) { return std::exp(log_C_finite_dim(l, n)); }

double C_finite_dim_recursive(int l, int n) {
  if (l < 1 || n < 1) throw std::domain_error("C_finite_dim: l, n must be >= 1");
  double c1 = 18.0 * std::sqrt(M_E) * n;
  double log_c1 = std::log(c1);
  double log_prev = log_c1;
  for (int m = 2; m <= l; ++m) log_prev = m * (std::log(2.0) + log_c1 + log_prev);
  return std::exp(log_prev);
}

double poincare_lower_bound(double q) {
  if (q < 1.0) throw std::domain_error("poincare_lower_bound: q must be >= 1");
  // Gamma via lgamma keeps the q-th root stable for large q
  double lg = std::lgamma((q + 1.0) / 2.0);
  return std::sqrt(2.0) * std::pow(M_PI, -1.0 / (2.0 * q)) * std::exp(lg / q);
}

double gauss_abs_moment(double p) {
  if (p < 0) throw std::domain_error("gauss_abs_moment: p must be >= 0");
  return std::pow(2.0, p / 2.0) * std::exp(std::lgamma((p + 1.0) / 2.0)) / std::sqrt(M_PI);
}

std::vector<ConstantRow> constant_table(const std::vector<double>& qs, const std::vector<int>& ls,
                                        const std::vector<int>& ks, const std::vector<int>& ns) {
  std::vector<ConstantRow> rows;
  for (double q : qs) {
    rows.push_back({"c_poincare", q, 0, 0, 0, c_poincare(q)});
    rows.push_back({"poincare_lower_bound", q, 0, 0, 0, poincare_lower_bound(q)});
    for (int l : ls)
      if (q > 1.0) rows.push_back({"d_expected", q, l, 0, 0, d_expected(l, q)});
    for (int k : ks)
      if (q > 1.0 && k >= 2) rows.push_back({"tau_equivalence", q, 0, k, 0, tau_equivalence(k, q)});
  }
  rows.push_back({"eta", 0, 0, 0, 0, eta_l1()});
  for (int l : ls)
    for (int n : ns) rows.push_back({"C_finite_dim", 0, l, 0, n, C_finite_dim(l, n)});
  return rows;
}

}  // namespace gsob::constants
