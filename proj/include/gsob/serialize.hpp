#ifndef GSOB_SERIALIZE_HPP
#define GSOB_SERIALIZE_HPP

#include "json.hpp"

#include "gsob/functional.hpp"
#include "gsob/hermite.hpp"
#include "gsob/integrate.hpp"

namespace gsob {

/// Serializes an integral with its full refinement history for audit.
nlohmann::json result_to_json(const IntegralResult& r);

/// {"dim":n,"codim":J,"components":[[{"alpha":[...],"coeff":"p/q"},...],...]}
/// plus "scale2" when the carried normalization factor is not 1.
nlohmann::json functional_to_json(const PolyFunctional& f);
PolyFunctional functional_from_json(const nlohmann::json& j);

/// {"dim":n,"terms":[{"alpha":[...],"coeff":"p/q"},...]}; "coeff" becomes an
/// array of J rationals for vector-valued expansions.
nlohmann::json expansion_to_json(const ChaosExpansion<Rational>& e);
ChaosExpansion<Rational> expansion_from_json(const nlohmann::json& j);

/// Row-major orthogonal matrix.
std::vector<std::vector<double>> matrix_from_json(const nlohmann::json& j);

}  // namespace gsob

#endif  // GSOB_SERIALIZE_HPP
