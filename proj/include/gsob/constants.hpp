#ifndef GSOB_CONSTANTS_HPP
#define GSOB_CONSTANTS_HPP

#include <string>
#include <vector>

namespace gsob::constants {

/// Poincare constant: sqrt(q-1) for q >= 2, pi/2 for q in [1,2).
double c_poincare(double q);

/// Expected-derivative constant: sqrt(l!) for q >= 2,
/// sqrt(l!) (qbar-1)^{l/2} for q in (1,2), qbar = q/(q-1).
/// Throws std::domain_error for q <= 1: no constant works there, the bound
/// ||E[D^l F]|| <= d ||F||_{L^1} fails outright.
double d_expected(int l, double q);

/// Norm-equivalence factor: tau_{k,q} = prod_{l=1}^{k-1} (1 + max(d_{l,q}, c_q)).
double tau_equivalence(int k, double q);

/// eta = pi/2 + 18 sqrt(2e), the L^1 sandwich constant.
double eta_l1();

/// Finite-dimensional constants: C_{1,n} = 18 sqrt(e) n and for l >= 2 the
/// closed form C_{l,n} = 2^{sum_{m=1}^{l-1} l!/(l-m)!} C_{1,n}^{sum_{m=1}^{l} l!/(l-m)!}.
double C_finite_dim(int l, int n);
/// Same constant through the recursion C_{l,n} = 2^l C_{1,n}^l C_{l-1,n}^l;
/// must agree with the closed form.
double C_finite_dim_recursive(int l, int n);
/// log of the closed form (safe for large l, n).
double log_C_finite_dim(int l, int n);

/// Lower bound for the optimal Poincare constant:
/// sqrt(2) pi^{-1/(2q)} Gamma((q+1)/2)^{1/q}.
double poincare_lower_bound(double q);

/// E|N|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi) for a standard Gaussian N.
double gauss_abs_moment(double p);

struct ConstantRow {
  std::string name;
  double q = 0;
  int l = 0, k = 0, n = 0;
  double value = 0;
};

/// Evaluates every constant over the given parameter grids (for the CLI
/// table; rows for which a parameter does not apply hold zeros there).
std::vector<ConstantRow> constant_table(const std::vector<double>& qs, const std::vector<int>& ls,
                                        const std::vector<int>& ks, const std::vector<int>& ns);

}  // namespace gsob::constants

#endif  // GSOB_CONSTANTS_HPP
