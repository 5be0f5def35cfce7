#ifndef GSOB_CHECKS_HPP
#define GSOB_CHECKS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsob/functional.hpp"
#include "gsob/integrate.hpp"

namespace gsob::verifier {

struct Tolerances {
  double quadrature_rel = 1e-8;
  double margin_abs = 1e-7;
  int quadrature_m_max = 128;
};

struct GridConfig {
  std::vector<double> q{1.0, 1.5, 2.0, 3.0, 4.0};
  std::vector<int> k{2, 3};
  std::vector<int> l{1, 2, 3};
  std::vector<int> n{1, 2, 3};
  std::vector<int> J{1, 3};
  std::vector<double> rho{0.1, 0.5, 0.9};
  std::vector<double> eps{0.1, 0.5, 0.9};
  std::vector<double> t{0.1, 0.5, 1.0};
  std::vector<double> K{1.0, 2.0, 10.0, 100.0};
  /// finite-dimensional checks run on their own (cheaper) exponent grid
  std::vector<double> q_finite{1.0, 2.0};
};

struct SuiteConfig {
  GridConfig grids;
  Tolerances tol;
  int corpus_count = 100;
  int degree_max = 6;
  std::uint64_t seed = 42;
  std::vector<std::string> enabled;  // empty = every known check
};

/// All check identifiers, in canonical execution order.
const std::vector<std::string>& known_checks();

enum class RowStatus { pass, fail, integration_failure, falsified_as_expected, exploratory };
const char* row_status_name(RowStatus s);

struct CheckRow {
  std::string case_id;
  std::string params;
  double lhs = 0, rhs = 0, margin = 0, constant = 0, integ_err = 0;
  bool integ_converged = true;
  RowStatus status = RowStatus::pass;
  std::string note;
};

struct CheckReport {
  std::string check_id;
  std::vector<CheckRow> rows;
  double min_margin = 0;
  std::string worst_case;
  double pass_rate = 1.0;
  int n_pass = 0, n_fail = 0, n_integration = 0, n_falsified = 0, n_exploratory = 0;
  std::string status;  // PASS | FAIL | INTEGRATION-FAILURE | FALSIFIED-AS-EXPECTED

  void add(CheckRow row);
  void finalize(bool expect_falsified = false);
};

/// A corpus slice living in one (n, J) cell.
struct Cell {
  int n = 1;
  int J = 1;
  std::string label;
  std::vector<CorpusMember> members;
};

/// Caches L^q norms of derivative tensors across checks; also centralizes the
/// pass/fail threshold policy (margin >= -(margin_abs + integration error)).
class NormCache {
 public:
  NormCache(Tolerances tol) : tol_(tol) {
    opt_.tol = tol.quadrature_rel;
    opt_.m_max = tol.quadrature_m_max;
  }

  const IntegralResult& norm(const Cell& cell, size_t member_idx, int order, double q);
  /// ||F - E[F]||_q (centering stays exact-rational).
  const IntegralResult& centered_norm(const Cell& cell, size_t member_idx, double q);

  const LqOptions& options() const { return opt_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  Tolerances tol_;
  LqOptions opt_;
  std::map<std::string, IntegralResult> cache_;
};

/// Classifies a row given the combined integration error of its norms.
/// `used_mc` marks rows whose norms were delegated to Monte Carlo.
CheckRow make_row(std::string case_id, std::string params, double lhs, double rhs,
                  double constant, double integ_err, bool integ_converged,
                  const Tolerances& tol, bool used_mc = false);

CheckReport check_poincare(double q, const Cell& cell, NormCache& cache);
CheckReport check_expected_derivative(int l, double q, const Cell& cell, NormCache& cache);
CheckReport check_l1_mean_derivative(int l, double rho, const Cell& cell, NormCache& cache);
CheckReport check_l1_sandwich(int l, const Cell& cell, NormCache& cache);
CheckReport check_norm_equivalence(int k, double q, const Cell& cell, NormCache& cache);
CheckReport check_finite_dim(int l, double q, double rho, double eps, const Cell& cell,
                             NormCache& cache);
CheckReport check_adams(double rho, double q, const Cell& cell_1d, NormCache& cache);
CheckReport demonstrate_counterexample(const std::vector<double>& K_grid,
                                       const std::vector<double>& rho_grid,
                                       const Tolerances& tol);
CheckReport check_chaos_poincare(double q, const std::vector<int>& l_grid,
                                 const Tolerances& tol);
CheckReport check_chaos_identity(const Cell& cell, int k_max, const Tolerances& tol);
/// Hermite witnesses plus chaos projections drawn from the given cells.
CheckReport check_hypercontractivity(const std::vector<int>& l_grid,
                                     const std::vector<const Cell*>& cells,
                                     const Tolerances& tol);
CheckReport check_ou_semigroup(const std::vector<double>& t_grid, const Cell& cell,
                               NormCache& cache);

struct SuiteResult {
  std::vector<CheckReport> reports;
  nlohmann::json report_json;
  std::string summary_csv;
  std::uint64_t canonical_hash = 0;
  int exit_code = 0;
};

SuiteConfig parse_config(const nlohmann::json& j);
SuiteResult run_suite(const SuiteConfig& cfg);
void write_reports(const SuiteResult& result, const std::string& out_dir);

}  // namespace gsob::verifier

#endif  // GSOB_CHECKS_HPP
