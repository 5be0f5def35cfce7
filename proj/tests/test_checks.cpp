#include "doctest.h"

#include <cmath>

#include "gsob/checks.hpp"
#include "gsob/constants.hpp"
#include "gsob/hermite.hpp"
#include "gsob/malliavin.hpp"

using namespace gsob;
using namespace gsob::verifier;

namespace {

Cell make_cell(int n, int J, int count, std::uint64_t seed) {
  Cell cell;
  cell.n = n;
  cell.J = J;
  cell.label = "n" + std::to_string(n) + "J" + std::to_string(J);
  CorpusSpec spec;
  spec.dim = n;
  spec.codim = J;
  spec.degree_max = 4;
  spec.count = count;
  spec.seed = seed;
  cell.members = generate_corpus(spec);
  return cell;
}

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.corpus_count = 10;
  cfg.degree_max = 3;
  cfg.seed = 7;
  cfg.grids.q = {1.0, 2.0};
  cfg.grids.q_finite = {1.0, 2.0};
  cfg.grids.k = {2};
  cfg.grids.l = {1, 2};
  cfg.grids.n = {1, 2};
  cfg.grids.J = {1};
  cfg.grids.rho = {0.5};
  cfg.grids.eps = {0.5};
  cfg.grids.t = {0.5};
  cfg.grids.K = {1.0, 10.0};
  return cfg;
}

}  // namespace

TEST_CASE("counterexample check falsifies the one-parameter bound") {
  Tolerances tol;
  auto rep = demonstrate_counterexample({1.0, 10.0}, {0.1, 0.5, 0.9}, tol);
  CHECK(rep.status == "FALSIFIED-AS-EXPECTED");
  CHECK(rep.n_falsified > 0);
  CHECK(rep.n_fail == 0);

  // K = 10, rho = 10 gives rhs ~ 0.798 < 1; K = 1, rho = 0.1 gives ~7.98 > 1
  bool saw_violation_k10 = false, saw_hold_small_rho = false;
  for (const auto& r : rep.rows) {
    if (r.params.find("K=10;rho=") != std::string::npos &&
        r.status == RowStatus::falsified_as_expected) {
      CHECK(r.rhs < 1.0);
      saw_violation_k10 = true;
    }
    if (r.params == "K=1;rho=0.1" && r.status == RowStatus::pass) {
      CHECK(r.rhs == doctest::Approx(7.9788).epsilon(1e-3));
      saw_hold_small_rho = true;
    }
  }
  CHECK(saw_violation_k10);
  CHECK(saw_hold_small_rho);

  CHECK_THROWS_AS((void)demonstrate_counterexample({}, {0.5}, tol), std::invalid_argument);
}

TEST_CASE("poincare check: saturation and pass on a small corpus") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell = make_cell(1, 1, 8, 99);
  auto rep = check_poincare(2.0, cell, cache);
  CHECK(rep.status == "PASS");
  // the witness F = x1 saturates the q = 2 constant: ratio exactly 1
  for (const auto& r : rep.rows)
    if (r.case_id == "w_x1") CHECK(r.note == "ratio=1");
}

TEST_CASE("expected-derivative check on the worked example") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 1;
  cell.J = 1;
  cell.label = "manual";
  PolyFunctional sq(1, 1);
  sq.components[0].add_term(MultiIndex({2}), Rational(1));
  cell.members.push_back({"xsq", sq});
  auto rep = check_expected_derivative(2, 2.0, cell, cache);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.rows[0].rhs == doctest::Approx(std::sqrt(2.0) * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(rep.status == "PASS");

  CHECK_THROWS_AS((void)check_expected_derivative(2, 1.0, cell, cache), std::domain_error);
}

TEST_CASE("l1 mean-derivative and sandwich checks on worked examples") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 1;
  cell.J = 1;
  cell.label = "manual";
  PolyFunctional sq(1, 1);
  sq.components[0].add_term(MultiIndex({2}), Rational(1));
  PolyFunctional fx{RatPoly::variable(1, 0)};
  cell.members.push_back({"xsq", sq});
  cell.members.push_back({"x", fx});

  auto rep = check_l1_mean_derivative(2, 0.9, cell, cache);
  REQUIRE(rep.rows.size() == 2);
  // F = x^2, l = 2: lhs = 2, rhs = 18 sqrt(2e) (||2x||_1 / 0.9 + 0)
  CHECK(rep.rows[0].lhs == doctest::Approx(2.0));
  double expect = 18.0 * std::sqrt(2.0 * M_E) * (2.0 * std::sqrt(2.0 / M_PI) / 0.9);
  CHECK(rep.rows[0].rhs == doctest::Approx(expect).epsilon(1e-9));
  CHECK(rep.status == "PASS");

  auto sw = check_l1_sandwich(1, cell, cache);
  // F = x: lhs = ||1||_1 = 1, rhs = eta (sqrt(2/pi) + 0)
  for (const auto& r : sw.rows)
    if (r.case_id == "x") {
      CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.rhs ==
            doctest::Approx(constants::eta_l1() * std::sqrt(2.0 / M_PI)).epsilon(1e-9));
    }
  CHECK(sw.status == "PASS");

  // F = H2: lhs = ||2x||_1, rhs = eta (||H2||_1 + ||2||_1)
  Cell hc;
  hc.n = 1;
  hc.J = 1;
  hc.label = "manual2";
  hc.members.push_back({"H2", PolyFunctional(hermite_as_poly<Rational>(2, 1, 0))});
  auto sh = check_l1_sandwich(1, hc, cache);
  REQUIRE(sh.rows.size() == 1);
  CHECK(sh.rows[0].lhs == doctest::Approx(2.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-10));
  double h2l1 = 4.0 / std::sqrt(2.0 * M_PI * M_E);
  CHECK(sh.rows[0].rhs == doctest::Approx(constants::eta_l1() * (h2l1 + 2.0)).epsilon(1e-9));
}

TEST_CASE("norm equivalence check on f = x at k=2, q=2") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 1;
  cell.J = 1;
  cell.label = "manual";
  cell.members.push_back({"x", PolyFunctional(RatPoly::variable(1, 0))});
  auto rep = check_norm_equivalence(2, 2.0, cell, cache);
  CHECK(rep.status == "PASS");
  for (const auto& r : rep.rows) {
    if (r.params.find("ineq=upper") != std::string::npos) {
      CHECK(r.lhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));  // D
      CHECK(r.rhs == doctest::Approx(2.0).epsilon(1e-12));             // tau * G with G = 1
    }
    if (r.params.find("ineq=trivial") != std::string::npos) {
      CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));  // G
      CHECK(r.rhs == doctest::Approx(std::pow(2.0, 0.5) * std::sqrt(2.0)).epsilon(1e-12));
    }
  }

  // q = 1, k >= 3 produces the parity bounds plus an exploratory ratio
  auto rep3 = check_norm_equivalence(3, 1.0, cell, cache);
  bool saw_even = false, saw_odd = false, saw_ratio = false;
  for (const auto& r : rep3.rows) {
    if (r.params.find("even_orders") != std::string::npos) saw_even = true;
    if (r.params.find("odd_orders") != std::string::npos) saw_odd = true;
    if (r.params.find("ratio_open") != std::string::npos) {
      CHECK(r.status == RowStatus::exploratory);
      saw_ratio = true;
    }
  }
  CHECK(saw_even);
  CHECK(saw_odd);
  CHECK(saw_ratio);
}

TEST_CASE("finite-dimensional check on f = x, l = 1, q = 1, n = 1") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 1;
  cell.J = 1;
  cell.label = "manual";
  cell.members.push_back({"x", PolyFunctional(RatPoly::variable(1, 0))});
  auto rep = check_finite_dim(1, 1.0, 0.5, 0.5, cell, cache);
  REQUIRE(!rep.rows.empty());
  const auto& r = rep.rows[0];
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  double expect = 18.0 * std::sqrt(M_E) * (2.0 * std::sqrt(2.0 / M_PI));
  CHECK(r.rhs == doctest::Approx(expect).epsilon(1e-9));
  CHECK(rep.status == "PASS");
}

TEST_CASE("adams interval bound on g(t) = t at rho = 1 (direct form)") {
  // |g'(0)| = 1 <= 9 (int_0^1 t dt + 0) = 4.5
  double ig = halfline_interval_integral([](double t) { return std::abs(t); }, 0.0, 1.0,
                                         IntervalWeight::lebesgue);
  double rhs = 9.0 * (ig / 1.0 + 0.0);
  CHECK(rhs == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(1.0 <= rhs);
}

TEST_CASE("adams check over a 1-d corpus") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell = make_cell(1, 1, 6, 555);
  for (double rho : {0.1, 0.5, 0.9}) {
    auto rep = check_adams(rho, 1.0, cell, cache);
    CHECK(rep.status == "PASS");
    bool saw_vec = false;
    for (const auto& r : rep.rows)
      if (r.params.find("interval_vector") != std::string::npos) saw_vec = true;
    CHECK(saw_vec);
  }
  Cell bad = make_cell(2, 1, 3, 5);
  CHECK_THROWS_AS((void)check_adams(0.5, 1.0, bad, cache), std::invalid_argument);
}

TEST_CASE("chaos poincare check for Hermite witnesses") {
  Tolerances tol;
  auto rep = check_chaos_poincare(4.0, {1, 2, 3}, tol);
  CHECK(rep.status == "PASS");
  // l = 1 constant is sqrt(3) = c_poincare(4)
  CHECK(rep.rows[0].constant == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(rep.rows[0].constant == doctest::Approx(constants::c_poincare(4.0)).epsilon(1e-14));
  // l = 2 at q = 4: constant sqrt(9/2); l = 3 at q = 3: sqrt(8/3)
  CHECK(rep.rows[1].constant == doctest::Approx(std::sqrt(4.5)).epsilon(1e-14));
  auto rep3 = check_chaos_poincare(3.0, {3}, tol);
  CHECK(rep3.rows[0].constant == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-14));
  CHECK_THROWS_AS((void)check_chaos_poincare(2.0, {1}, tol), std::invalid_argument);
}

TEST_CASE("chaos identity check is exact on a corpus") {
  Tolerances tol;
  Cell cell = make_cell(2, 2, 6, 2024);
  auto rep = check_chaos_identity(cell, 4, tol);
  CHECK(rep.status == "PASS");
  for (const auto& r : rep.rows) CHECK(r.lhs == 0.0);
}

TEST_CASE("hypercontractivity check: worked value and chain rows") {
  Tolerances tol;
  Cell cell = make_cell(1, 1, 6, 31);
  auto rep = check_hypercontractivity({1, 2, 3, 4}, {&cell}, tol);
  CHECK(rep.status == "PASS");
  bool saw_h2 = false, saw_chain = false, saw_stated = false;
  for (const auto& r : rep.rows) {
    if (r.case_id == "H2" && r.params == "l=2;s=2;r=4") {
      CHECK(r.lhs == doctest::Approx(std::pow(60.0, 0.25)).epsilon(1e-8));
      CHECK(r.rhs == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-8));
      saw_h2 = true;
    }
    if (r.params.find("chain=derived_3l_over_2") != std::string::npos) saw_chain = true;
    if (r.params.find("chain=stated_3l_over_8") != std::string::npos) {
      CHECK(r.status == RowStatus::exploratory);
      saw_stated = true;
    }
  }
  CHECK(saw_h2);
  CHECK(saw_chain);
  CHECK(saw_stated);

  // the oracle-facing op rejects functionals that straddle chaoses
  PolyFunctional mixed(1, 1);
  mixed.components[0] = hermite_as_poly<Rational>(2, 1, 0) + RatPoly::variable(1, 0);
  auto oracle = [](const PolyFunctional& f, double q) { return lq_norm(f, q); };
  CHECK_THROWS_AS((void)hypercontractivity_ratio(mixed, 2, 2.0, 4.0, oracle),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)hypercontractivity_ratio(PolyFunctional(hermite_as_poly<Rational>(2, 1, 0)), 2, 0.5,
                                     4.0, oracle),
      std::invalid_argument);
}

TEST_CASE("ou semigroup check passes on a small cell") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell = make_cell(1, 1, 5, 77);
  auto rep = check_ou_semigroup({0.1, 0.5, 1.0}, cell, cache);
  CHECK(rep.status == "PASS");
  bool saw_rate = false;
  for (const auto& r : rep.rows)
    if (r.params.find("long_time_rate") != std::string::npos) saw_rate = true;
  CHECK(saw_rate);
}

TEST_CASE("config parsing: defaults, overrides, and rejection") {
  auto cfg = parse_config(nlohmann::json::parse(R"({
    "seed": 7,
    "tolerances": {"quadrature_rel": 1e-8, "margin_abs": 1e-7},
    "corpus": {"count": 12, "degree_max": 4},
    "grids": {"q": [1, 2], "n": [1], "J": [1]},
    "checks": ["poincare", "counterexample"]
  })"));
  CHECK(cfg.seed == 7);
  CHECK(cfg.corpus_count == 12);
  CHECK(cfg.grids.q == std::vector<double>{1.0, 2.0});
  CHECK(cfg.enabled.size() == 2);

  CHECK_THROWS_AS((void)parse_config(nlohmann::json::parse(R"({"checks": ["nope"]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config(nlohmann::json::parse(R"({"grids": {"rho": [1.5]}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config(nlohmann::json::parse(R"({"corpus": {"count": 0}})")),
                  std::invalid_argument);
}

TEST_CASE("run_suite: deterministic, exit 0, reports well-formed") {
  SuiteConfig cfg = small_config();
  auto a = run_suite(cfg);
  auto b = run_suite(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.canonical_hash == b.canonical_hash);
  // byte-identical modulo the timestamp field
  auto ja = a.report_json;
  auto jb = b.report_json;
  ja["meta"].erase("timestamp");
  jb["meta"].erase("timestamp");
  CHECK(ja.dump() == jb.dump());

  // different seed, different corpus, different hash
  cfg.seed = 8;
  auto c = run_suite(cfg);
  CHECK(c.canonical_hash != a.canonical_hash);

  // counterexample check reports the positive falsification status
  bool saw_ce = false;
  for (const auto& rep : a.reports)
    if (rep.check_id == "counterexample") {
      CHECK(rep.status == "FALSIFIED-AS-EXPECTED");
      saw_ce = true;
    }
  CHECK(saw_ce);

  // summary CSV has one line per check x parameter combination
  CHECK(a.summary_csv.find("check_id,params") == 0);
  CHECK(a.summary_csv.find("poincare") != std::string::npos);

  // single-check filtering works
  SuiteConfig only = small_config();
  only.enabled = {"poincare"};
  auto d = run_suite(only);
  CHECK(d.reports.size() == 1);
  CHECK(d.reports[0].check_id == "poincare");
  CHECK(d.exit_code == 0);
}

TEST_CASE("finite-dimensional full-vs-graph bound on F = x^2 at k=2, q=2, eps=0.5") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 1;
  cell.J = 1;
  cell.label = "manual";
  PolyFunctional sq(1, 1);
  sq.components[0].add_term(MultiIndex({2}), Rational(1));
  cell.members.push_back({"xsq", sq});
  auto rep = check_finite_dim(2, 2.0, 0.5, 0.5, cell, cache);
  bool saw = false;
  for (const auto& r : rep.rows) {
    if (r.params.find("ineq=full_vs_graph") == std::string::npos) continue;
    saw = true;
    // D(2,2) = sqrt(E[x^4] + ||2x||^2 + ||2||^2) = sqrt(11)
    CHECK(r.lhs == doctest::Approx(std::sqrt(11.0)).epsilon(1e-12));
    double c11 = constants::C_finite_dim(1, 1);
    double pref = 8.0 * c11 * c11 / 0.5;
    CHECK(r.rhs == doctest::Approx(pref * std::sqrt(3.0) + 1.5 * 2.0).epsilon(1e-12));
    CHECK(r.status == RowStatus::pass);
  }
  CHECK(saw);
}

TEST_CASE("rows driven by Monte Carlo norms are flagged") {
  Tolerances tol;
  NormCache cache(tol);
  Cell cell;
  cell.n = 7;
  cell.J = 1;
  cell.label = "n7J1";
  // seven effective variables force the MC path for q = 1
  RatPoly p(7);
  for (int v = 0; v < 7; ++v) p += RatPoly::variable(7, v);
  cell.members.push_back({"sum7", normalized(PolyFunctional(p))});
  auto rep = check_l1_sandwich(1, cell, cache);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].note.find("method=MC") != std::string::npos);
  CHECK(rep.rows[0].status == RowStatus::pass);
}
