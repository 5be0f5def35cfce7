#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsob/checks.hpp"
#include "gsob/constants.hpp"
#include "gsob/hermite.hpp"
#include "gsob/malliavin.hpp"
#include "gsob/serialize.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfigError = 3;

std::vector<double> parse_range(const std::string& spec) {
  // "a:b:step" or a comma list "a,b,c"
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double a, b, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
      throw std::invalid_argument("bad range spec: " + spec);
    for (double v = a; v <= b + 1e-12; v += step) out.push_back(v);
  } else {
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty range: " + spec);
  return out;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

int run_verify(const std::string& config_path, std::uint64_t seed, bool seed_set,
               const std::vector<std::string>& checks, const std::string& out_dir) {
  gsob::verifier::SuiteConfig cfg;
  try {
    if (!config_path.empty()) cfg = gsob::verifier::parse_config(load_json(config_path));
    if (seed_set) cfg.seed = seed;
    if (!checks.empty()) {
      for (const auto& id : checks) {
        const auto& known = gsob::verifier::known_checks();
        if (std::find(known.begin(), known.end(), id) == known.end())
          throw std::invalid_argument("unknown check id: " + id);
      }
      cfg.enabled = checks;
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  auto result = gsob::verifier::run_suite(cfg);
  if (!out_dir.empty()) gsob::verifier::write_reports(result, out_dir);
  for (const auto& rep : result.reports) {
    std::cout << rep.status << "  " << rep.check_id << "  (rows " << rep.rows.size()
              << ", min margin " << rep.min_margin << ", worst " << rep.worst_case << ")\n";
  }
  std::cout << "canonical hash: " << result.report_json["meta"]["canonical_hash"] << "\n";
  return result.exit_code;
}

int run_norms(const std::string& file, int k, double q, const std::string& kind, int order,
              double tol, int m_max) {
  gsob::PolyFunctional f = gsob::functional_from_json(load_json(file));
  gsob::SobolevNormRequest req;
  req.k = k;
  req.q = q;
  req.integration.tol = tol;
  req.integration.m_max = m_max;
  if (kind == "full")
    req.kind = gsob::SobolevNormRequest::Kind::full;
  else if (kind == "graph")
    req.kind = gsob::SobolevNormRequest::Kind::graph;
  else if (kind == "single") {
    req.kind = gsob::SobolevNormRequest::Kind::single;
    req.single_order = order;
  } else {
    std::cerr << "unknown norm kind: " << kind << "\n";
    return kExitConfigError;
  }
  auto res = gsob::sobolev_norm(f, req);
  json out{{"kind", kind},
           {"k", k},
           {"q", q},
           {"value", res.value},
           {"error", res.error_estimate},
           {"converged", res.converged}};
  gsob::SobolevNormRequest g = req;
  g.kind = gsob::SobolevNormRequest::Kind::graph;
  gsob::SobolevNormRequest d = req;
  d.kind = gsob::SobolevNormRequest::Kind::full;
  out["graph_norm"] = gsob::sobolev_norm(f, g).value;
  out["full_norm"] = gsob::sobolev_norm(f, d).value;
  // per-order integrals with their refinement histories, for audit
  json parts = json::array();
  for (int l = 0; l <= k; ++l) {
    json p = gsob::result_to_json(gsob::derivative_lq_norm(f, l, q, req.integration));
    p["order"] = l;
    parts.push_back(std::move(p));
  }
  out["derivative_norms"] = parts;
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int run_chaos(const std::string& file) {
  gsob::PolyFunctional f = gsob::functional_from_json(load_json(file));
  auto e = gsob::to_hermite(f);
  json out{{"expansion", gsob::expansion_to_json(e)}};
  json norms = json::array();
  for (int k = 0; k <= e.max_order(); ++k) {
    double v = std::sqrt(e.chaos_l2_sq(k).get_d());
    norms.push_back(json{{"k", k}, {"l2_norm", v}});
  }
  out["chaos_l2_norms"] = norms;
  out["parseval_l2_sq"] = gsob::rational_to_string(e.total_l2_sq());
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

int run_constants(const std::string& qspec, const std::string& lspec, const std::string& kspec,
                  const std::string& nspec, const std::string& format) {
  auto qs = parse_range(qspec);
  std::vector<int> ls, ks, ns;
  for (double v : parse_range(lspec)) ls.push_back(static_cast<int>(v));
  for (double v : parse_range(kspec)) ks.push_back(static_cast<int>(v));
  for (double v : parse_range(nspec)) ns.push_back(static_cast<int>(v));
  auto rows = gsob::constants::constant_table(qs, ls, ks, ns);
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back(json{
          {"name", r.name}, {"q", r.q}, {"l", r.l}, {"k", r.k}, {"n", r.n}, {"value", r.value}});
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "name,q,l,k,n,value\n";
    for (const auto& r : rows)
      std::cout << r.name << "," << r.q << "," << r.l << "," << r.k << "," << r.n << ","
                << r.value << "\n";
  }
  return kExitPass;
}

int run_counterexample(const std::string& kspec, const std::string& rspec) {
  gsob::verifier::Tolerances tol;
  auto rep =
      gsob::verifier::demonstrate_counterexample(parse_range(kspec), parse_range(rspec), tol);
  for (const auto& r : rep.rows)
    std::cout << gsob::verifier::row_status_name(r.status) << "  " << r.params
              << "  lhs=" << r.lhs << " rhs=" << r.rhs << "  " << r.note << "\n";
  std::cout << rep.status << "\n";
  return rep.status == "FALSIFIED-AS-EXPECTED" ? 0 : 1;
}

int run_sweep(const std::string& param, const std::string& range, const std::string& check,
              std::uint64_t seed, const std::string& out_dir) {
  gsob::verifier::SuiteConfig cfg;
  cfg.seed = seed;
  const auto& known = gsob::verifier::known_checks();
  if (std::find(known.begin(), known.end(), check) == known.end()) {
    std::cerr << "unknown check id: " << check << "\n";
    return kExitConfigError;
  }
  cfg.enabled = {check};
  auto vals = parse_range(range);
  auto to_int = [&] {
    std::vector<int> out;
    for (double v : vals) out.push_back(static_cast<int>(v));
    return out;
  };
  if (param == "q") {
    cfg.grids.q = vals;
    cfg.grids.q_finite = vals;
  } else if (param == "k")
    cfg.grids.k = to_int();
  else if (param == "l")
    cfg.grids.l = to_int();
  else if (param == "n")
    cfg.grids.n = to_int();
  else if (param == "rho")
    cfg.grids.rho = vals;
  else if (param == "eps")
    cfg.grids.eps = vals;
  else if (param == "t")
    cfg.grids.t = vals;
  else if (param == "K")
    cfg.grids.K = vals;
  else {
    std::cerr << "unknown sweep parameter: " << param << "\n";
    return kExitConfigError;
  }
  // keep sweeps quick by default; the config file path covers bigger runs
  cfg.corpus_count = 24;
  auto result = gsob::verifier::run_suite(cfg);
  if (!out_dir.empty()) gsob::verifier::write_reports(result, out_dir);
  std::cout << result.summary_csv;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian Sobolev calculus toolkit: Malliavin derivatives, Wiener chaos, "
               "Ornstein-Uhlenbeck semigroup, and an inequality verification suite"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the inequality verification suite");
  std::string config_path, out_dir;
  std::uint64_t seed = 42;
  std::vector<std::string> check_ids;
  verify->add_option("--config", config_path, "JSON config file");
  auto* seed_opt = verify->add_option("--seed", seed, "master seed");
  verify->add_option("--check", check_ids, "run only these check ids");
  verify->add_option("--out", out_dir, "directory for report.json and summary.csv");

  auto* norms = app.add_subcommand("norms", "Sobolev norms of a functional");
  std::string nf_file, kind = "full";
  int k = 2, order = 1;
  double q = 2.0, tol = 1e-8;
  norms->add_option("--functional", nf_file, "functional JSON file")->required();
  norms->add_option("--k", k, "top derivative order");
  norms->add_option("--q", q, "integrability exponent");
  norms->add_option("--kind", kind, "full | graph | single");
  norms->add_option("--order", order, "derivative order for kind=single");
  norms->add_option("--tol", tol, "quadrature relative tolerance");
  int m_max = 128;
  norms->add_option("--m-max", m_max, "maximum nodes per axis for adaptive grids");

  auto* chaos = app.add_subcommand("chaos", "Wiener chaos decomposition of a functional");
  std::string cf_file;
  chaos->add_option("--functional", cf_file, "functional JSON file")->required();

  auto* consts =
      app.add_subcommand("constants", "print the constant table over parameter grids");
  std::string qspec = "1:4:0.5", lspec = "1,2,3", kspec = "2,3", nspec = "1,2,3", format = "csv";
  consts->add_option("--grid,--q", qspec, "q grid (a:b:step or comma list)");
  consts->add_option("--l", lspec, "derivative orders");
  consts->add_option("--k", kspec, "top orders");
  consts->add_option("--n", nspec, "dimensions");
  consts->add_option("--format", format, "csv | json");

  auto* ce = app.add_subcommand("counterexample",
                                "reproduce the failing one-parameter gradient bound");
  std::string ce_k = "1,2,10,100", ce_rho = "0.1,0.5,0.9";
  ce->add_option("--K", ce_k, "constants to refute");
  ce->add_option("--rho", ce_rho, "rho grid to scan");

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter for one check");
  std::string sw_param, sw_range, sw_check, sw_out;
  std::uint64_t sw_seed = 42;
  sweep->add_option("--param", sw_param, "q|k|l|n|rho|eps|t|K")->required();
  sweep->add_option("--range", sw_range, "a:b:step")->required();
  sweep->add_option("--check", sw_check, "check id")->required();
  sweep->add_option("--seed", sw_seed, "master seed");
  sweep->add_option("--out", sw_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed())
      return run_verify(config_path, seed, seed_opt->count() > 0, check_ids, out_dir);
    if (norms->parsed()) return run_norms(nf_file, k, q, kind, order, tol, m_max);
    if (chaos->parsed()) return run_chaos(cf_file);
    if (consts->parsed()) return run_constants(qspec, lspec, kspec, nspec, format);
    if (ce->parsed()) return run_counterexample(ce_k, ce_rho);
    if (sweep->parsed()) return run_sweep(sw_param, sw_range, sw_check, sw_seed, sw_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return kExitConfigError;
}
