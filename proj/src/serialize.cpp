#include "gsob/serialize.hpp"

namespace gsob {

using nlohmann::json;

namespace {

json alpha_to_json(const MultiIndex& a) {
  json arr = json::array();
  for (int v : a.exponents()) arr.push_back(v);
  return arr;
}

MultiIndex alpha_from_json(const json& j) {
  std::vector<int> e;
  for (const auto& v : j) e.push_back(v.get<int>());
  return MultiIndex(std::move(e));
}

json poly_to_json(const RatPoly& p) {
  json arr = json::array();
  for (const auto& [a, c] : p.terms())
    arr.push_back(json{{"alpha", alpha_to_json(a)}, {"coeff", rational_to_string(c)}});
  return arr;
}

RatPoly poly_from_json(const json& j, int dim) {
  RatPoly p(dim);
  for (const auto& t : j)
    p.add_term(alpha_from_json(t.at("alpha")), rational_from_string(t.at("coeff").get<std::string>()));
  return p;
}

}  // namespace

json result_to_json(const IntegralResult& r) {
  json hist = json::array();
  for (const auto& [m, v] : r.refinement_history) hist.push_back(json{{"m", m}, {"value", v}});
  return json{{"value", r.value},
              {"method", r.method_name()},
              {"error_estimate", r.error_estimate},
              {"converged", r.converged},
              {"refinement_history", hist}};
}

json functional_to_json(const PolyFunctional& f) {
  json comps = json::array();
  for (const auto& p : f.components) comps.push_back(poly_to_json(p));
  json j{{"dim", f.dim}, {"codim", f.codim}, {"components", comps}};
  if (f.scale2 != 1) j["scale2"] = rational_to_string(f.scale2);
  return j;
}

PolyFunctional functional_from_json(const json& j) {
  int dim = j.at("dim").get<int>();
  int codim = j.at("codim").get<int>();
  PolyFunctional f(dim, codim);
  const auto& comps = j.at("components");
  if (static_cast<int>(comps.size()) != codim)
    throw std::invalid_argument("functional JSON: component count does not match codim");
  for (int c = 0; c < codim; ++c) f.components[c] = poly_from_json(comps[c], dim);
  if (j.contains("scale2")) f.scale2 = rational_from_string(j.at("scale2").get<std::string>());
  return f;
}

json expansion_to_json(const ChaosExpansion<Rational>& e) {
  json terms = json::array();
  for (const auto& [a, cs] : e.coeffs) {
    json t{{"alpha", alpha_to_json(a)}};
    if (e.codim == 1) {
      t["coeff"] = rational_to_string(cs[0]);
    } else {
      json arr = json::array();
      for (const auto& c : cs) arr.push_back(rational_to_string(c));
      t["coeff"] = arr;
    }
    terms.push_back(t);
  }
  json j{{"dim", e.dim}, {"terms", terms}};
  if (e.codim != 1) j["codim"] = e.codim;
  if (e.scale2 != 1) j["scale2"] = rational_to_string(e.scale2);
  return j;
}

ChaosExpansion<Rational> expansion_from_json(const json& j) {
  ChaosExpansion<Rational> e;
  e.dim = j.at("dim").get<int>();
  e.codim = j.value("codim", 1);
  if (j.contains("scale2")) e.scale2 = rational_from_string(j.at("scale2").get<std::string>());
  for (const auto& t : j.at("terms")) {
    MultiIndex a = alpha_from_json(t.at("alpha"));
    const auto& c = t.at("coeff");
    if (c.is_string()) {
      e.add(a, 0, rational_from_string(c.get<std::string>()));
    } else {
      int jj = 0;
      for (const auto& s : c) e.add(a, jj++, rational_from_string(s.get<std::string>()));
    }
  }
  return e;
}

std::vector<std::vector<double>> matrix_from_json(const json& j) {
  std::vector<std::vector<double>> m;
  for (const auto& row : j) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.get<double>());
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace gsob
