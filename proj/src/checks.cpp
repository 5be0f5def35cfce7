#include "gsob/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "gsob/constants.hpp"
#include "gsob/hermite.hpp"
#include "gsob/malliavin.hpp"
#include "gsob/ou.hpp"
#include "gsob/quadrature.hpp"
#include "gsob/rng.hpp"
#include "gsob/serialize.hpp"

namespace gsob::verifier {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string param_str(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ";";
    out += k;
    out += "=";
    out += v;
  }
  return out;
}

PolyFunctional centered(const PolyFunctional& f) {
  PolyFunctional c = f;
  for (int j = 0; j < f.codim; ++j) {
    Rational mean = gaussian_moment(f.components[j]);
    if (sgn(mean) != 0) c.components[j] += RatPoly::constant(f.dim, -mean);
  }
  return c;
}

std::vector<double> univariate_coeffs(const RatPoly& p) {
  std::vector<double> c(p.degree_in(0) + 1, 0.0);
  for (const auto& [a, co] : p.terms()) c[a[0]] += co.get_d();
  return c;
}

PolyFunctional hermite_functional(int l) {
  return PolyFunctional(hermite_as_poly<Rational>(l, 1, 0));
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> ids{
      "poincare",       "expected_derivative", "l1_mean_derivative", "l1_sandwich",
      "norm_equivalence", "finite_dim",        "adams",              "counterexample",
      "chaos_poincare", "chaos_identity",      "hypercontractivity", "ou_semigroup"};
  return ids;
}

const char* row_status_name(RowStatus s) {
  switch (s) {
    case RowStatus::pass: return "PASS";
    case RowStatus::fail: return "FAIL";
    case RowStatus::integration_failure: return "INTEGRATION-FAILURE";
    case RowStatus::falsified_as_expected: return "FALSIFIED-AS-EXPECTED";
    case RowStatus::exploratory: return "EXPLORATORY";
  }
  return "?";
}

void CheckReport::add(CheckRow row) { rows.push_back(std::move(row)); }

void CheckReport::finalize(bool expect_falsified) {
  min_margin = std::numeric_limits<double>::infinity();
  n_pass = n_fail = n_integration = n_falsified = n_exploratory = 0;
  for (const auto& r : rows) {
    switch (r.status) {
      case RowStatus::pass: ++n_pass; break;
      case RowStatus::fail: ++n_fail; break;
      case RowStatus::integration_failure: ++n_integration; break;
      case RowStatus::falsified_as_expected: ++n_falsified; break;
      case RowStatus::exploratory: ++n_exploratory; break;
    }
    if (r.status != RowStatus::exploratory && r.margin < min_margin) {
      min_margin = r.margin;
      worst_case = r.case_id + " [" + r.params + "]";
    }
  }
  int graded = n_pass + n_fail + n_integration + n_falsified;
  pass_rate = graded > 0 ? static_cast<double>(n_pass + n_falsified) / graded : 1.0;
  if (expect_falsified) {
    status = (n_fail == 0 && n_integration == 0 && n_falsified > 0) ? "FALSIFIED-AS-EXPECTED"
                                                                    : "FAIL";
  } else if (n_fail > 0) {
    status = "FAIL";
  } else if (n_integration > 0) {
    status = "INTEGRATION-FAILURE";
  } else {
    status = "PASS";
  }
}

const IntegralResult& NormCache::norm(const Cell& cell, size_t member_idx, int order, double q) {
  std::string key =
      cell.label + "#" + cell.members[member_idx].id + "|D" + std::to_string(order) + "|q" + fmt(q);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, derivative_lq_norm(cell.members[member_idx].f, order, q, opt_)).first;
  return it->second;
}

const IntegralResult& NormCache::centered_norm(const Cell& cell, size_t member_idx, double q) {
  std::string key = cell.label + "#" + cell.members[member_idx].id + "|C|q" + fmt(q);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, lq_norm(centered(cell.members[member_idx].f), q, opt_)).first;
  return it->second;
}

namespace {
bool is_mc(const IntegralResult& r) {
  return r.method == IntegralResult::Method::monte_carlo;
}
}  // namespace

CheckRow make_row(std::string case_id, std::string params, double lhs, double rhs,
                  double constant, double integ_err, bool integ_converged,
                  const Tolerances& tol, bool used_mc) {
  CheckRow r;
  r.case_id = std::move(case_id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.constant = constant;
  r.integ_err = integ_err;
  r.integ_converged = integ_converged;
  double threshold = tol.margin_abs + integ_err;
  if (r.margin >= -threshold) {
    r.status = RowStatus::pass;
  } else if (!integ_converged && r.margin >= -(threshold + 3 * integ_err)) {
    r.status = RowStatus::integration_failure;
    r.note = "margin within integration uncertainty";
  } else {
    r.status = RowStatus::fail;
  }
  if (used_mc) r.note += (r.note.empty() ? "" : "; ") + std::string("method=MC");
  return r;
}

// ---------------------------------------------------------------------------

CheckReport check_poincare(double q, const Cell& cell, NormCache& cache) {
  CheckReport rep;
  rep.check_id = "poincare";
  const Tolerances& tol = cache.tolerances();
  double cq = constants::c_poincare(q);
  double sup_ratio = 0.0;
  double witness_ratio = 0.0;
  std::string base = param_str({{"q", fmt(q)}, {"cell", cell.label}});
  for (size_t i = 0; i < cell.members.size(); ++i) {
    const auto& lhs = cache.centered_norm(cell, i, q);
    const auto& dnorm = cache.norm(cell, i, 1, q);
    double rhs = cq * dnorm.value;
    double err = lhs.error_estimate + cq * dnorm.error_estimate;
    CheckRow row = make_row(cell.members[i].id, base, lhs.value, rhs, cq, err,
                            lhs.converged && dnorm.converged, tol, is_mc(lhs) || is_mc(dnorm));
    if (dnorm.value > 1e-14) {
      double ratio = lhs.value / dnorm.value;
      row.note = "ratio=" + fmt(ratio);
      sup_ratio = std::max(sup_ratio, ratio);
      if (cell.members[i].id == "w_x1") witness_ratio = ratio;
    }
    rep.add(std::move(row));
  }
  // corpus-wide supremum ratio never exceeds c_q ...
  rep.add(make_row("_sup_ratio", base, sup_ratio, cq, cq, 1e-9, true, tol));
  // ... and the witness achieves at least the lower bound
  double plb = constants::poincare_lower_bound(q);
  rep.add(make_row("_witness_ratio", base, plb - 1e-6, witness_ratio, plb, 0.0, true, tol));
  rep.finalize();
  return rep;
}

CheckReport check_expected_derivative(int l, double q, const Cell& cell, NormCache& cache) {
  CheckReport rep;
  rep.check_id = "expected_derivative";
  const Tolerances& tol = cache.tolerances();
  double d = constants::d_expected(l, q);  // refuses q <= 1
  std::string base = param_str({{"l", fmt(l)}, {"q", fmt(q)}, {"cell", cell.label}});
  for (size_t i = 0; i < cell.members.size(); ++i) {
    double lhs = mean_derivative(cell.members[i].f, l).norm();
    const auto& fn = cache.norm(cell, i, 0, q);
    rep.add(make_row(cell.members[i].id, base, lhs, d * fn.value, d, d * fn.error_estimate,
                     fn.converged, tol, is_mc(fn)));
  }
  rep.finalize();
  return rep;
}

CheckReport check_l1_mean_derivative(int l, double rho, const Cell& cell, NormCache& cache) {
  CheckReport rep;
  rep.check_id = "l1_mean_derivative";
  const Tolerances& tol = cache.tolerances();
  double c = 18.0 * std::sqrt(2.0 * M_E);
  std::string base = param_str({{"l", fmt(l)}, {"rho", fmt(rho)}, {"cell", cell.label}});
  for (size_t i = 0; i < cell.members.size(); ++i) {
    double lhs = mean_derivative(cell.members[i].f, l).norm();
    const auto& lower = cache.norm(cell, i, l - 1, 1.0);
    const auto& upper = cache.norm(cell, i, l + 1, 1.0);
    double rhs = c * (lower.value / rho + rho * upper.value);
    double err = c * (lower.error_estimate / rho + rho * upper.error_estimate);
    rep.add(make_row(cell.members[i].id, base, lhs, rhs, c, err,
                     lower.converged && upper.converged, tol, is_mc(lower) || is_mc(upper)));
  }
  rep.finalize();
  return rep;
}

CheckReport check_l1_sandwich(int l, const Cell& cell, NormCache& cache) {
  CheckReport rep;
  rep.check_id = "l1_sandwich";
  const Tolerances& tol = cache.tolerances();
  double eta = constants::eta_l1();
  std::string base = param_str({{"l", fmt(l)}, {"cell", cell.label}});
  for (size_t i = 0; i < cell.members.size(); ++i) {
    const auto& mid = cache.norm(cell, i, l, 1.0);
    const auto& lower = cache.norm(cell, i, l - 1, 1.0);
    const auto& upper = cache.norm(cell, i, l + 1, 1.0);
    double rhs = eta * (lower.value + upper.value);
    double err = mid.error_estimate + eta * (lower.error_estimate + upper.error_estimate);
    rep.add(make_row(cell.members[i].id, base, mid.value, rhs, eta, err,
                     mid.converged && lower.converged && upper.converged, tol,
                     is_mc(mid) || is_mc(lower) || is_mc(upper)));
  }
  rep.finalize();
  return rep;
}

namespace {

struct SobolevFromCache {
  double graph = 0, full = 0, graph_err = 0, full_err = 0;
  bool converged = true;
  bool used_mc = false;
};

SobolevFromCache sobolev_from_cache(const Cell& cell, size_t i, int k, double q,
                                    NormCache& cache) {
  SobolevFromCache s;
  double acc = 0.0;
  for (int l = 0; l <= k; ++l) {
    const auto& r = cache.norm(cell, i, l, q);
    acc += std::pow(r.value, q);
    s.full_err += r.error_estimate;
    s.converged = s.converged && r.converged;
    s.used_mc = s.used_mc || is_mc(r);
    if (l == 0 || l == k) {
      s.graph += r.value;
      s.graph_err += r.error_estimate;
    }
  }
  s.full = std::pow(acc, 1.0 / q);
  return s;
}

}  // namespace

CheckReport check_norm_equivalence(int k, double q, const Cell& cell, NormCache& cache) {
  CheckReport rep;
  rep.check_id = "norm_equivalence";
  const Tolerances& tol = cache.tolerances();
  std::string base = param_str({{"k", fmt(k)}, {"q", fmt(q)}, {"cell", cell.label}});
  double eta = constants::eta_l1();
  for (size_t i = 0; i < cell.members.size(); ++i) {
    SobolevFromCache s = sobolev_from_cache(cell, i, k, q, cache);
    const std::string& id = cell.members[i].id;
    // trivial bound: G <= 2^{1-1/q} D, everywhere
    double c_triv = std::pow(2.0, 1.0 - 1.0 / q);
    rep.add(make_row(id, base + ";ineq=trivial", s.graph, c_triv * s.full, c_triv,
                     s.graph_err + c_triv * s.full_err, s.converged, tol, s.used_mc));
    if (q > 1.0) {
      double tau = constants::tau_equivalence(k, q);
      rep.add(make_row(id, base + ";ineq=upper", s.full, tau * s.graph, tau,
                       s.full_err + tau * s.graph_err, s.converged, tol, s.used_mc));
    } else if (k == 2) {
      // G <= D <= (1 + eta) G
      rep.add(make_row(id, base + ";ineq=lower", s.graph, s.full, 1.0, s.graph_err + s.full_err,
                       s.converged, tol, s.used_mc));
      rep.add(make_row(id, base + ";ineq=upper", s.full, (1.0 + eta) * s.graph, 1.0 + eta,
                       s.full_err + (1.0 + eta) * s.graph_err, s.converged, tol, s.used_mc));
    } else {
      // q = 1, k >= 3: partial bounds with intermediate derivatives of one
      // parity; the full equivalence is open there
      double even_sum = 0, even_err = 0, odd_sum = 0, odd_err = 0;
      bool conv = s.converged;
      bool mc = s.used_mc;
      for (int l = 1; l <= (k + 1) / 2 - 1; ++l) {
        const auto& r = cache.norm(cell, i, 2 * l, 1.0);
        even_sum += r.value;
        even_err += r.error_estimate;
        conv = conv && r.converged;
        mc = mc || is_mc(r);
      }
      for (int l = 1; l <= k / 2; ++l) {
        const auto& r = cache.norm(cell, i, 2 * l - 1, 1.0);
        odd_sum += r.value;
        odd_err += r.error_estimate;
        conv = conv && r.converged;
        mc = mc || is_mc(r);
      }
      double c2 = 1.0 + 2.0 * eta;
      rep.add(make_row(id, base + ";ineq=even_orders", s.full, c2 * (s.graph + even_sum), c2,
                       s.full_err + c2 * (s.graph_err + even_err), conv, tol, mc));
      rep.add(make_row(id, base + ";ineq=odd_orders", s.full, c2 * (s.graph + odd_sum), c2,
                       s.full_err + c2 * (s.graph_err + odd_err), conv, tol, mc));
      CheckRow ratio;
      ratio.case_id = id;
      ratio.params = base + ";ineq=ratio_open";
      ratio.lhs = s.graph > 0 ? s.full / s.graph : 0.0;
      ratio.rhs = 0.0;
      ratio.status = RowStatus::exploratory;
      ratio.note = "D/G recorded; equivalence open at q=1 for k>=3";
      rep.add(std::move(ratio));
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_finite_dim(int l, double q, double rho, double eps, const Cell& cell,
                             NormCache& cache) {
  CheckReport rep;
  rep.check_id = "finite_dim";
  const Tolerances& tol = cache.tolerances();
  int n = cell.n;
  std::string base = param_str(
      {{"l", fmt(l)}, {"q", fmt(q)}, {"rho", fmt(rho)}, {"eps", fmt(eps)}, {"cell", cell.label}});
  double cln = constants::C_finite_dim(l, n);
  for (size_t i = 0; i < cell.members.size(); ++i) {
    const std::string& id = cell.members[i].id;
    const auto& nl = cache.norm(cell, i, l, q);
    const auto& n0 = cache.norm(cell, i, 0, q);
    const auto& nl1 = cache.norm(cell, i, l + 1, q);
    double rhs = cln * (std::pow(rho, -l) * n0.value + rho * nl1.value);
    double err = nl.error_estimate +
                 cln * (std::pow(rho, -l) * n0.error_estimate + rho * nl1.error_estimate);
    rep.add(make_row(id, base + ";ineq=derivative_bound", nl.value, rhs, cln, err,
                     nl.converged && n0.converged && nl1.converged, tol,
                     is_mc(nl) || is_mc(n0) || is_mc(nl1)));
    if (l >= 2) {
      int k = l;
      SobolevFromCache s = sobolev_from_cache(cell, i, k, q, cache);
      const auto& nk = cache.norm(cell, i, k, q);
      double ckn = constants::C_finite_dim(k - 1, n);
      double pref = std::pow(2.0, k + 1) * std::pow(ckn, k) / std::pow(eps, k - 1);
      double rhs2 = pref * n0.value + (1.0 + eps) * nk.value;
      double err2 = s.full_err + pref * n0.error_estimate + (1.0 + eps) * nk.error_estimate;
      rep.add(make_row(id, base + ";ineq=full_vs_graph", s.full, rhs2, pref, err2,
                       s.converged && nk.converged, tol, s.used_mc || is_mc(nk)));
    }
  }
  rep.finalize();
  return rep;
}

CheckReport check_adams(double rho, double q, const Cell& cell_1d, NormCache& cache) {
  if (cell_1d.n != 1 || cell_1d.J != 1)
    throw std::invalid_argument("adams checks need the one-dimensional scalar corpus");
  CheckReport rep;
  rep.check_id = "adams";
  const Tolerances& tol = cache.tolerances();
  std::string base = param_str({{"rho", fmt(rho)}, {"q", fmt(q)}, {"cell", cell_1d.label}});
  double int_tol = 1e-11;

  for (size_t i = 0; i < cell_1d.members.size(); ++i) {
    const auto& m = cell_1d.members[i];
    double scale = m.f.scale();
    RatPoly g = m.f.components[0];
    RatPoly g1 = g.partial(0), g2 = g1.partial(0);
    auto gc = univariate_coeffs(g), g2c = univariate_coeffs(g2);

    // |g'(0)| <= 9 (rho^{-2} int_0^rho |g| + int_0^rho |g''|)   [Lebesgue]
    double zero = 0.0;
    double lhs = std::abs(scale * g1.eval(std::span<const double>(&zero, 1)));
    double e1 = 0, e2 = 0;
    double ig = halfline_interval_integral(
        [&](double t) { return std::abs(scale * g.eval(std::span<const double>(&t, 1))); }, 0.0,
        rho, IntervalWeight::lebesgue, int_tol, real_roots_in(gc, 0.0, rho), &e1);
    double ig2 = halfline_interval_integral(
        [&](double t) { return std::abs(scale * g2.eval(std::span<const double>(&t, 1))); }, 0.0,
        rho, IntervalWeight::lebesgue, int_tol, real_roots_in(g2c, 0.0, rho), &e2);
    double rhs = 9.0 * (ig / (rho * rho) + ig2);
    rep.add(make_row(m.id, base + ";ineq=interval", lhs, rhs, 9.0,
                     9.0 * (e1 / (rho * rho) + e2) + 1e-12, true, tol));

    // gaussian form: int |f'|^q dgamma <= 18^q sqrt(e) (rho^{-q} int |f|^q
    //                                                   + rho^q int |f''|^q)
    const auto& d1 = cache.norm(cell_1d, i, 1, q);
    const auto& d0 = cache.norm(cell_1d, i, 0, q);
    const auto& d2n = cache.norm(cell_1d, i, 2, q);
    double cg = std::pow(18.0, q) * std::sqrt(M_E);
    double lhs_g = std::pow(d1.value, q);
    double rhs_g = cg * (std::pow(rho, -q) * std::pow(d0.value, q) +
                         std::pow(rho, q) * std::pow(d2n.value, q));
    double err_g = q * std::pow(d1.value + d1.error_estimate, q - 1) * d1.error_estimate +
                   cg * std::pow(rho, -q) * q * std::pow(d0.value + d0.error_estimate, q - 1) *
                       d0.error_estimate +
                   cg * std::pow(rho, q) * q * std::pow(d2n.value + d2n.error_estimate, q - 1) *
                       d2n.error_estimate;
    rep.add(make_row(m.id, base + ";ineq=gaussian", lhs_g, rhs_g, cg, err_g,
                     d0.converged && d1.converged && d2n.converged, tol,
                     is_mc(d0) || is_mc(d1) || is_mc(d2n)));
  }

  // vector-valued q-power interval form on stacked triples
  size_t nvec = std::min<size_t>(cell_1d.members.size(), 5);
  for (size_t i = 0; i + 2 < cell_1d.members.size() && i < nvec; ++i) {
    std::vector<const PolyFunctional*> comps{&cell_1d.members[i].f, &cell_1d.members[i + 1].f,
                                             &cell_1d.members[i + 2].f};
    auto vec_eval = [&](double t, int order) {
      double sos = 0.0;
      for (const auto* f : comps) {
        RatPoly p = f->components[0];
        for (int o = 0; o < order; ++o) p = p.partial(0);
        double v = f->scale() * p.eval(std::span<const double>(&t, 1));
        sos += v * v;
      }
      return std::pow(sos, 0.5 * q);
    };
    double lhs = vec_eval(0.0, 1);
    double e1 = 0, e2 = 0;
    double i0 = halfline_interval_integral([&](double t) { return vec_eval(t, 0); }, 0.0, rho,
                                           IntervalWeight::lebesgue, int_tol, {}, &e1);
    double i2 = halfline_interval_integral([&](double t) { return vec_eval(t, 2); }, 0.0, rho,
                                           IntervalWeight::lebesgue, int_tol, {}, &e2);
    double cvec = std::pow(9.0, q) * std::pow(2.0, q - 1.0);
    double rhs = cvec * (std::pow(rho, -q - 1.0) * i0 + std::pow(rho, q - 1.0) * i2);
    rep.add(make_row(cell_1d.members[i].id + "+2", base + ";ineq=interval_vector", lhs, rhs, cvec,
                     cvec * (std::pow(rho, -q - 1.0) * e1 + std::pow(rho, q - 1.0) * e2) + 1e-12,
                     true, tol));
  }
  rep.finalize();
  return rep;
}

CheckReport demonstrate_counterexample(const std::vector<double>& K_grid,
                                       const std::vector<double>& rho_grid,
                                       const Tolerances& tol) {
  if (K_grid.empty() || rho_grid.empty())
    throw std::invalid_argument("counterexample needs nonempty grids");
  CheckReport rep;
  rep.check_id = "counterexample";
  PolyFunctional fx{RatPoly::variable(1, 0)};

  // ||f||_{L^1} must come out as sqrt(2/pi) to 1e-9; f' = 1 so ||f'||_{L^1}=1,
  // and f'' = 0
  auto l1 = lq_norm(fx, 1.0, {.tol = 1e-12});
  double expect = std::sqrt(2.0 / M_PI);
  {
    CheckRow r =
        make_row("f=x", "norm=L1", std::abs(l1.value - expect), 1e-9, 0.0, 0.0, true, tol);
    r.note = "computed " + fmt(l1.value);
    rep.add(std::move(r));
  }
  auto d1 = lq_norm(PolyFunctional{RatPoly::constant(1, Rational(1))}, 1.0);

  for (double K : K_grid) {
    std::vector<double> rhos = rho_grid;
    rhos.push_back(2.0 * K * l1.value);  // constructed witness: any rho > K sqrt(2/pi)
    bool falsified_for_K = false;
    for (double rho : rhos) {
      double rhs = K * (l1.value / rho + rho * 0.0);
      double lhs = d1.value;  // = 1
      CheckRow r;
      r.case_id = "f=x";
      r.params = param_str({{"K", fmt(K)}, {"rho", fmt(rho)}});
      r.lhs = lhs;
      r.rhs = rhs;
      r.margin = rhs - lhs;
      r.constant = K;
      if (rhs < lhs - tol.margin_abs) {
        r.status = RowStatus::falsified_as_expected;
        r.note = "bound violated at this rho";
        falsified_for_K = true;
      } else {
        r.status = RowStatus::pass;
        r.note = "no contradiction at this rho";
      }
      rep.add(std::move(r));
    }
    // threshold rho = K ||f||_1: both sides meet
    double rho_th = K * l1.value;
    CheckRow th;
    th.case_id = "f=x";
    th.params = param_str({{"K", fmt(K)}, {"rho", fmt(rho_th)}});
    th.lhs = 1.0;
    th.rhs = K * (l1.value / rho_th);
    th.margin = th.rhs - th.lhs;
    th.status = RowStatus::exploratory;
    th.note = "threshold rho: equality";
    rep.add(std::move(th));
    if (!falsified_for_K) {
      CheckRow bad;
      bad.case_id = "f=x";
      bad.params = param_str({{"K", fmt(K)}});
      bad.status = RowStatus::fail;
      bad.note = "no violating rho found for this K";
      rep.add(std::move(bad));
    }
  }
  rep.finalize(/*expect_falsified=*/true);
  return rep;
}

CheckReport check_chaos_poincare(double q, const std::vector<int>& l_grid,
                                 const Tolerances& tol) {
  if (q <= 2.0) throw std::invalid_argument("chaos Poincare bound needs q > 2");
  CheckReport rep;
  rep.check_id = "chaos_poincare";
  LqOptions opt{.tol = tol.quadrature_rel};
  for (int l : l_grid) {
    PolyFunctional h = hermite_functional(l);
    double c = std::sqrt(std::pow(q - 1.0, l) / l);
    auto lhs = lq_norm(h, q, opt);  // E[H_l] = 0 for l >= 1
    auto dn = derivative_lq_norm(h, 1, q, opt);
    CheckRow r = make_row("H" + std::to_string(l), param_str({{"q", fmt(q)}, {"l", fmt(l)}}),
                          lhs.value, c * dn.value, c, lhs.error_estimate + c * dn.error_estimate,
                          lhs.converged && dn.converged, tol);
    if (l == 1) r.note = "constant equals c_poincare(q)";
    rep.add(std::move(r));
  }
  rep.finalize();
  return rep;
}

CheckReport check_chaos_identity(const Cell& cell, int k_max, const Tolerances& tol) {
  CheckReport rep;
  rep.check_id = "chaos_identity";
  (void)tol;
  for (const auto& m : cell.members) {
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k)
      worst = std::max(worst, chaos_identity_check(m.f, k, mean_derivative(m.f, k)));
    CheckRow r;
    r.case_id = m.id;
    r.params = param_str({{"cell", cell.label}, {"k_max", fmt(k_max)}});
    r.lhs = worst;
    r.rhs = 0.0;
    r.margin = -worst;
    // the rational path must yield literal zero, not a small residual
    r.status = worst == 0.0 ? RowStatus::pass : RowStatus::fail;
    rep.add(std::move(r));
  }
  rep.finalize();
  return rep;
}

CheckReport check_hypercontractivity(const std::vector<int>& l_grid,
                                     const std::vector<const Cell*>& cells,
                                     const Tolerances& tol) {
  CheckReport rep;
  rep.check_id = "hypercontractivity";
  LqOptions opt{.tol = tol.quadrature_rel};
  auto oracle = [&](const PolyFunctional& f, double q) { return lq_norm(f, q, opt); };
  const std::vector<std::pair<double, double>> pairs{{2, 3}, {2, 4}, {3, 4}};

  std::vector<std::pair<std::string, PolyFunctional>> cases;
  for (int l : l_grid) cases.emplace_back("H" + std::to_string(l), hermite_functional(l));
  // chaos-pure projections of corpus members widen the evidence; in n >= 2
  // these are genuine mixtures of Hermite products, not single H_l multiples
  for (const Cell* cell : cells) {
    int added = 0;
    for (const auto& m : cell->members) {
      if (added >= 3 || m.f.codim != 1) break;
      if (m.id.rfind("r", 0) != 0) continue;
      for (int l : l_grid) {
        PolyFunctional p = project(m.f, l);
        if (!p.is_zero() && l >= 2) {
          cases.emplace_back(m.id + "|" + cell->label + "|J" + std::to_string(l), std::move(p));
          ++added;
          break;
        }
      }
    }
  }

  for (auto& [id, f] : cases) {
    auto expansion = to_hermite(f);
    int l = expansion.max_order();
    if (!expansion.pure_chaos(l)) continue;
    for (auto [s, r] : pairs) {
      auto [lhs, rhs] = hypercontractivity_ratio(f, l, s, r, oracle);
      rep.add(make_row(id, param_str({{"l", fmt(l)}, {"s", fmt(s)}, {"r", fmt(r)}}), lhs.value,
                       rhs, std::pow((r - 1.0) / (s - 1.0), l / 2.0), 2 * lhs.error_estimate,
                       lhs.converged, tol));
      // monotonicity ||f||_s <= ||f||_r
      auto ns = oracle(f, s);
      rep.add(make_row(id, param_str({{"l", fmt(l)}, {"mono", fmt(s) + "vs" + fmt(r)}}), ns.value,
                       lhs.value, 1.0, ns.error_estimate + lhs.error_estimate,
                       ns.converged && lhs.converged, tol));
    }
    // norm-equivalence chain down to L^1
    auto n1 = oracle(f, 1.0);
    auto n2 = oracle(f, 2.0);
    auto n3 = oracle(f, 3.0);
    double err = n1.error_estimate + n2.error_estimate + n3.error_estimate;
    rep.add(make_row(id, param_str({{"l", fmt(l)}, {"chain", "holder"}}), n2.value,
                     std::pow(n1.value, 0.25) * std::pow(n3.value, 0.75), 1.0, err,
                     n1.converged && n2.converged && n3.converged, tol));
    rep.add(make_row(id, param_str({{"l", fmt(l)}, {"chain", "l3_vs_l2"}}), n3.value,
                     std::pow(2.0, l / 2.0) * n2.value, std::pow(2.0, l / 2.0), err,
                     n2.converged && n3.converged, tol));
    // combining the two displayed steps and isolating ||f||_2^{1/4} gives
    // exponent 3l/2
    rep.add(make_row(id, param_str({{"l", fmt(l)}, {"chain", "derived_3l_over_2"}}), n2.value,
                     std::pow(2.0, 1.5 * l) * n1.value, std::pow(2.0, 1.5 * l), err,
                     n1.converged && n2.converged, tol));
    // the sharper exponent 3l/8: recorded as data, not asserted
    CheckRow stated;
    stated.case_id = id;
    stated.params = param_str({{"l", fmt(l)}, {"chain", "stated_3l_over_8"}});
    stated.lhs = n1.value > 0 ? n2.value / n1.value : 0.0;
    stated.rhs = std::pow(2.0, 0.375 * l);
    stated.margin = stated.rhs - stated.lhs;
    stated.status = RowStatus::exploratory;
    stated.note = stated.lhs <= stated.rhs ? "ratio consistent with exponent 3l/8"
                                           : "ratio exceeds exponent 3l/8";
    rep.add(std::move(stated));
  }
  rep.finalize();
  return rep;
}

CheckReport check_ou_semigroup(const std::vector<double>& t_grid, const Cell& cell,
                               NormCache& cache) {
  CheckReport rep;
  rep.check_id = "ou_semigroup";
  const Tolerances& tol = cache.tolerances();
  std::string base = param_str({{"cell", cell.label}});
  size_t limit = std::min<size_t>(cell.members.size(), 6);

  for (size_t i = 0; i < limit; ++i) {
    const auto& m = cell.members[i];
    // Mehler path and diagonal Hermite path agree to 1e-12 relative
    double t = 0.45;
    auto mehler = ou_apply(m.f, t);
    auto diag = ou_apply_diagonal(m.f, t);
    double dev = 0.0, scale = 0.0;
    for (int j = 0; j < m.f.codim; ++j) {
      for (const auto& [a, c] : mehler.components[j].terms())
        scale = std::max(scale, std::abs(c));
      DblPoly diff = mehler.components[j] - diag.components[j];
      for (const auto& [a, c] : diff.terms()) dev = std::max(dev, std::abs(c));
    }
    double rel = scale > 0 ? dev / scale : dev;
    rep.add(make_row(m.id, base + ";prop=eigenrelation", rel, 1e-12, 0, 0, true, tol));

    // semigroup law
    double worst_law = 0.0;
    for (double s : {0.3, 0.7}) {
      auto two = ou_apply(ou_apply(m.f, s), 0.3);
      auto one = ou_apply(m.f, s + 0.3);
      for (int j = 0; j < m.f.codim; ++j) {
        DblPoly diff = two.components[j] - one.components[j];
        for (const auto& [a, c] : diff.terms()) worst_law = std::max(worst_law, std::abs(c));
      }
    }
    rep.add(make_row(m.id, base + ";prop=semigroup_law", worst_law, 1e-12, 0, 0, true, tol));

    // mean preservation across the time grid
    double worst_mean = 0.0;
    for (double tt : t_grid)
      worst_mean = std::max(worst_mean, ou_mean_preservation_residual(m.f, tt));
    rep.add(make_row(m.id, base + ";prop=mean_preservation", worst_mean, 1e-12, 0, 0, true, tol));

    // contraction of L^q norms
    for (double q : {1.0, 2.0, 3.0}) {
      const auto& n0 = cache.norm(cell, i, 0, q);
      auto img = ou_apply(m.f, t_grid.empty() ? 0.5 : t_grid[t_grid.size() / 2]);
      auto n1 = lq_norm(img, q, cache.options());
      rep.add(make_row(m.id, base + ";prop=contraction;q=" + fmt(q), n1.value, n0.value, 1.0,
                       n0.error_estimate + n1.error_estimate, n0.converged && n1.converged, tol,
                       is_mc(n0) || is_mc(n1)));
    }
  }

  // pointwise bounds and long-time behavior (scalar members)
  if (cell.J == 1) {
    size_t pw_limit = std::min<size_t>(cell.members.size(), 4);
    for (size_t i = 0; i < pw_limit; ++i) {
      const auto& m = cell.members[i];
      for (double t : t_grid) {
        for (double q : {2.0, 3.0}) {
          auto g =
              ou_gradient_commutation(m.f, t, q, cell.n == 1 ? 14 : 10, LqOptions{.tol = 1e-9});
          double allowance = q == 2.0 ? 1e-10 : 1e-6 * std::max(1.0, std::abs(g.worst_rhs));
          rep.add(make_row(m.id, base + ";prop=gradient_commutation;t=" + fmt(t) + ";q=" + fmt(q),
                           -g.min_margin, 0.0, 0.0, allowance, true, tol));
          auto p = ou_smoothing_bound(m.f, t, q, cell.n == 1 ? 14 : 10, LqOptions{.tol = 1e-9});
          rep.add(make_row(m.id, base + ";prop=smoothing;t=" + fmt(t) + ";q=" + fmt(q),
                           -p.min_margin, 0.0, 0.0, allowance, true, tol));
        }
      }
      std::vector<double> grid = t_grid;
      std::sort(grid.begin(), grid.end());
      auto res = ou_long_time_residuals(m.f, grid);
      bool monotone = true;
      for (size_t j = 1; j < res.size(); ++j)
        if (res[j] > res[j - 1] + 1e-13) monotone = false;
      rep.add(make_row(m.id, base + ";prop=long_time_monotone", monotone ? 0.0 : 1.0, 0.0, 0, 0,
                       true, tol));
      if (m.id == "w_x1") {
        double worst = 0.0;
        for (size_t j = 0; j < grid.size(); ++j)
          worst = std::max(worst, std::abs(res[j] - std::exp(-grid[j])));
        rep.add(make_row(m.id, base + ";prop=long_time_rate", worst, 1e-9, 0, 0, true, tol));
      }
    }
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------

SuiteConfig parse_config(const json& j) {
  SuiteConfig cfg;
  try {
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (t.contains("quadrature_rel")) cfg.tol.quadrature_rel = t.at("quadrature_rel");
      if (t.contains("margin_abs")) cfg.tol.margin_abs = t.at("margin_abs");
      if (t.contains("m_max")) cfg.tol.quadrature_m_max = t.at("m_max");
    }
    if (j.contains("corpus")) {
      const auto& c = j.at("corpus");
      if (c.contains("count")) cfg.corpus_count = c.at("count");
      if (c.contains("degree_max")) cfg.degree_max = c.at("degree_max");
    }
    if (j.contains("grids")) {
      const auto& g = j.at("grids");
      auto vec_d = [&](const char* key, std::vector<double>& out) {
        if (g.contains(key)) out = g.at(key).get<std::vector<double>>();
      };
      auto vec_i = [&](const char* key, std::vector<int>& out) {
        if (g.contains(key)) out = g.at(key).get<std::vector<int>>();
      };
      vec_d("q", cfg.grids.q);
      vec_i("k", cfg.grids.k);
      vec_i("l", cfg.grids.l);
      vec_i("n", cfg.grids.n);
      vec_i("J", cfg.grids.J);
      vec_d("rho", cfg.grids.rho);
      vec_d("eps", cfg.grids.eps);
      vec_d("t", cfg.grids.t);
      vec_d("K", cfg.grids.K);
      vec_d("q_finite", cfg.grids.q_finite);
    }
    if (j.contains("checks")) cfg.enabled = j.at("checks").get<std::vector<std::string>>();
    for (const auto& id : cfg.enabled)
      if (std::find(known_checks().begin(), known_checks().end(), id) == known_checks().end())
        throw std::invalid_argument("unknown check id: " + id);
    if (cfg.corpus_count < 1 || cfg.degree_max < 1)
      throw std::invalid_argument("corpus ranges must be nonempty");
    for (double q : cfg.grids.q)
      if (q < 1.0) throw std::invalid_argument("q grid entries must be >= 1");
    for (double r : cfg.grids.rho)
      if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("rho grid entries must be in (0,1)");
    for (double e : cfg.grids.eps)
      if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("eps grid entries must be in (0,1)");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  return cfg;
}

namespace {

bool enabled(const SuiteConfig& cfg, const std::string& id) {
  return cfg.enabled.empty() ||
         std::find(cfg.enabled.begin(), cfg.enabled.end(), id) != cfg.enabled.end();
}

json row_to_json(const CheckRow& r) {
  return json{{"case", r.case_id},
              {"params", r.params},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"margin", r.margin},
              {"constant", r.constant},
              {"integration_error", r.integ_err},
              {"integration_converged", r.integ_converged},
              {"status", row_status_name(r.status)},
              {"note", r.note}};
}

json report_to_json(const CheckReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back(row_to_json(r));
  return json{{"id", rep.check_id},
              {"status", rep.status},
              {"summary",
               json{{"min_margin", rep.min_margin},
                    {"worst_case", rep.worst_case},
                    {"pass_rate", rep.pass_rate},
                    {"pass", rep.n_pass},
                    {"fail", rep.n_fail},
                    {"integration_failure", rep.n_integration},
                    {"falsified_as_expected", rep.n_falsified},
                    {"exploratory", rep.n_exploratory}}},
              {"rows", rows}};
}

std::string summary_csv_from(const std::vector<CheckReport>& reports) {
  std::ostringstream csv;
  csv << "check_id,params,cases,pass,fail,integration_failure,falsified,min_margin,worst_case,"
         "status\n";
  for (const auto& rep : reports) {
    std::map<std::string, std::vector<const CheckRow*>> by_params;
    for (const auto& r : rep.rows) by_params[r.params].push_back(&r);
    for (const auto& [params, rows] : by_params) {
      int pass = 0, fail = 0, integ = 0, fals = 0;
      double minm = std::numeric_limits<double>::infinity();
      std::string worst;
      for (const auto* r : rows) {
        switch (r->status) {
          case RowStatus::pass: ++pass; break;
          case RowStatus::fail: ++fail; break;
          case RowStatus::integration_failure: ++integ; break;
          case RowStatus::falsified_as_expected: ++fals; break;
          case RowStatus::exploratory: break;
        }
        if (r->status != RowStatus::exploratory && r->margin < minm) {
          minm = r->margin;
          worst = r->case_id;
        }
      }
      std::string status = fail > 0 ? "FAIL" : (integ > 0 ? "INTEGRATION-FAILURE" : "PASS");
      if (rep.check_id == "counterexample" && fail == 0 && fals > 0)
        status = "FALSIFIED-AS-EXPECTED";
      if (!std::isfinite(minm)) minm = 0.0;  // exploratory-only groups carry no margin
      csv << rep.check_id << ",\"" << params << "\"," << rows.size() << "," << pass << "," << fail
          << "," << integ << "," << fals << "," << minm << "," << worst << "," << status << "\n";
    }
  }
  return csv.str();
}

json spot_check_vector_consistency(const SuiteConfig& cfg) {
  // stack three scalar corpus members into an R^3-valued functional and
  // verify the relations the Euclidean norm dictates
  json out = json::array();
  for (int n : cfg.grids.n) {
    CorpusSpec spec;
    spec.dim = n;
    spec.codim = 1;
    spec.degree_max = cfg.degree_max;
    spec.count = cfg.degree_max + 6;
    spec.seed = split_seed(cfg.seed, "spotcheck|n" + std::to_string(n));
    auto members = generate_corpus(spec);
    if (members.size() < 3) continue;
    PolyFunctional stacked(n, 3);
    for (int j = 0; j < 3; ++j) stacked.components[j] = members[j].f.components[0];
    stacked = normalized(stacked);

    Rational sum_sq = 0;
    for (int j = 0; j < 3; ++j)
      sum_sq += gaussian_moment(stacked.components[j] * stacked.components[j]);
    bool l2_ok = sum_sq * stacked.scale2 == l2_norm_sq(stacked);

    auto mean_full = mean_derivative(stacked, 1);
    Rational acc = 0;
    for (int j = 0; j < 3; ++j) {
      PolyFunctional fj{stacked.components[j]};
      fj.scale2 = stacked.scale2;
      acc += mean_derivative(fj, 1).norm_sq();
    }
    bool mean_ok = acc == mean_full.norm_sq();

    SobolevNormRequest req{.k = 2, .q = 2.0, .kind = SobolevNormRequest::Kind::full};
    double d_full = sobolev_norm(stacked, req).value;
    double d_sum = 0;
    for (int j = 0; j < 3; ++j) {
      PolyFunctional fj{stacked.components[j]};
      fj.scale2 = stacked.scale2;
      double v = sobolev_norm(fj, req).value;
      d_sum += v * v;
    }
    bool sobolev_ok = std::abs(std::sqrt(d_sum) - d_full) <= 1e-12 * std::max(1.0, d_full);

    out.push_back(json{{"n", n},
                       {"l2_additive", l2_ok},
                       {"mean_derivative_additive", mean_ok},
                       {"sobolev_q2_additive", sobolev_ok}});
  }
  return out;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  NormCache cache(cfg.tol);

  std::vector<Cell> cells;
  int ncells = static_cast<int>(cfg.grids.n.size() * cfg.grids.J.size());
  int base_count = std::max(1, cfg.corpus_count / std::max(1, ncells));
  int extra = cfg.corpus_count - base_count * ncells;
  for (int n : cfg.grids.n) {
    for (int J : cfg.grids.J) {
      Cell cell;
      cell.n = n;
      cell.J = J;
      cell.label = "n" + std::to_string(n) + "J" + std::to_string(J);
      CorpusSpec spec;
      spec.dim = n;
      spec.codim = J;
      spec.degree_max = cfg.degree_max;
      spec.count = base_count + (extra-- > 0 ? 1 : 0);
      spec.seed = split_seed(cfg.seed, "corpus|" + cell.label);
      cell.members = generate_corpus(spec);
      cells.push_back(std::move(cell));
    }
  }
  const Cell* cell_1d = nullptr;
  for (const auto& c : cells)
    if (c.n == 1 && c.J == 1) cell_1d = &c;

  auto collect = [&](CheckReport rep) {
    for (auto& existing : result.reports) {
      if (existing.check_id == rep.check_id) {
        for (auto& r : rep.rows) existing.add(std::move(r));
        return;
      }
    }
    result.reports.push_back(std::move(rep));
  };

  if (enabled(cfg, "poincare"))
    for (double q : cfg.grids.q)
      for (const auto& cell : cells) collect(check_poincare(q, cell, cache));

  if (enabled(cfg, "expected_derivative"))
    for (int l : cfg.grids.l)
      for (double q : cfg.grids.q)
        if (q > 1.0)
          for (const auto& cell : cells) collect(check_expected_derivative(l, q, cell, cache));

  if (enabled(cfg, "l1_mean_derivative"))
    for (int l : cfg.grids.l)
      for (double rho : cfg.grids.rho)
        for (const auto& cell : cells) collect(check_l1_mean_derivative(l, rho, cell, cache));

  if (enabled(cfg, "l1_sandwich"))
    for (int l : cfg.grids.l)
      for (const auto& cell : cells) collect(check_l1_sandwich(l, cell, cache));

  if (enabled(cfg, "norm_equivalence"))
    for (int k : cfg.grids.k)
      for (double q : cfg.grids.q)
        for (const auto& cell : cells) collect(check_norm_equivalence(k, q, cell, cache));

  if (enabled(cfg, "finite_dim"))
    for (int l : cfg.grids.l)
      for (double q : cfg.grids.q_finite)
        for (double rho : cfg.grids.rho)
          for (const auto& cell : cells)
            collect(check_finite_dim(l, q, rho, /*eps=*/rho, cell, cache));

  if (enabled(cfg, "adams") && cell_1d)
    for (double rho : cfg.grids.rho)
      for (double q : cfg.grids.q) collect(check_adams(rho, q, *cell_1d, cache));

  if (enabled(cfg, "counterexample"))
    collect(demonstrate_counterexample(cfg.grids.K, cfg.grids.rho, cfg.tol));

  if (enabled(cfg, "chaos_poincare"))
    for (double q : cfg.grids.q)
      if (q > 2.0) collect(check_chaos_poincare(q, cfg.grids.l, cfg.tol));

  if (enabled(cfg, "chaos_identity"))
    for (const auto& cell : cells) collect(check_chaos_identity(cell, 4, cfg.tol));

  if (enabled(cfg, "hypercontractivity") && cell_1d) {
    std::vector<int> ls = cfg.grids.l;
    if (std::find(ls.begin(), ls.end(), 4) == ls.end()) ls.push_back(4);
    std::vector<const Cell*> hc_cells{cell_1d};
    for (const auto& c : cells)
      if (c.n == 2 && c.J == 1) hc_cells.push_back(&c);
    collect(check_hypercontractivity(ls, hc_cells, cfg.tol));
  }

  if (enabled(cfg, "ou_semigroup"))
    for (const auto& cell : cells)
      if (cell.n <= 2 && cell.J == 1) collect(check_ou_semigroup(cfg.grids.t, cell, cache));

  bool counterexample_ok = true;
  for (auto& rep : result.reports) {
    rep.finalize(rep.check_id == "counterexample");
    if (rep.check_id == "counterexample" && rep.status != "FALSIFIED-AS-EXPECTED")
      counterexample_ok = false;
  }

  json spot = spot_check_vector_consistency(cfg);
  bool spot_ok = true;
  for (const auto& s : spot)
    for (const auto& [k, v] : s.items())
      if (v.is_boolean() && !v.get<bool>()) spot_ok = false;

  json checks = json::array();
  int fails = 0, integs = 0;
  for (const auto& rep : result.reports) {
    checks.push_back(report_to_json(rep));
    fails += rep.n_fail;
    integs += rep.n_integration;
  }

  json meta{{"seed", cfg.seed},
            {"corpus_count", cfg.corpus_count},
            {"degree_max", cfg.degree_max},
            {"tolerances", json{{"quadrature_rel", cfg.tol.quadrature_rel},
                                {"margin_abs", cfg.tol.margin_abs}}}};
  result.report_json = json{{"meta", meta}, {"checks", checks}, {"spot_checks", spot}};

  // canonical hash over everything except the timestamp
  result.canonical_hash = fnv1a64(result.report_json.dump());
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(result.canonical_hash));
  result.report_json["meta"]["canonical_hash"] = hex;
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  result.report_json["meta"]["timestamp"] = buf;

  result.summary_csv = summary_csv_from(result.reports);
  if (fails > 0 || !counterexample_ok || !spot_ok)
    result.exit_code = 1;
  else if (integs > 0)
    result.exit_code = 2;
  else
    result.exit_code = 0;
  return result;
}

void write_reports(const SuiteResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream js(out_dir + "/report.json");
  js << result.report_json.dump(2) << "\n";
  std::ofstream csv(out_dir + "/summary.csv");
  csv << result.summary_csv;
}

}  // namespace gsob::verifier
