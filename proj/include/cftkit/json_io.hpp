#pragma once

#include "cftkit/coset.hpp"
#include "cftkit/cyclotomic.hpp"
#include "cftkit/modinv.hpp"
#include "cftkit/modular_data.hpp"
#include "cftkit/qseries.hpp"

#include <json.hpp>

namespace cftkit {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"order": N, "coords": ["p/q", ...]}
Json to_json(const Cyclotomic& a);
Cyclotomic cyclotomic_from_json(const Json& j);

Json to_json(const TheoryId& t);
TheoryId theory_from_json(const Json& j);

/// {"theory", "labels", "c", "h", "s_scale", "S", "t_phases"}
Json to_json(const ModularData& data);

/// {"leading_exponent": "p/q", "coeffs": [{"z exponent": "coefficient"}, ...]}
Json to_json(const PuiseuxSeries& s);

/// {"basis": [...], "matrix": [[...]], "tag": "..."}
Json to_json(const ModularInvariant& x);
ModularInvariant invariant_from_json(const Json& j);

Json to_json(const InvariantReport& r);

Json to_json(const CommutantBasis& b);
CommutantBasis commutant_from_json(const Json& j);

Json to_json(const BranchingRule& rule);
Json to_json(const GkoReport& r);
Json to_json(const ExtensionSpec& e);
Json to_json(const WeightReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const NamedVOA& v);
Json to_json(const CatalogEntry& e);
Json to_json(const Classification& c);

}  // namespace cftkit
