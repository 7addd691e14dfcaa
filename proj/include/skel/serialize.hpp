#pragma once

#include "skel/complexes.hpp"
#include "skel/weights.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace skel {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const ExtRational& q);
Rational rational_from_json(const Json& j);
ExtRational ext_rational_from_json(const Json& j);

Json to_json(const LaurentPolynomial& p);
Json to_json(const LaurentRational& f);
LaurentPolynomial polynomial_from_json(const Json& j, std::size_t arity);
// Accepts {"num", "den"} or a bare term list (denominator 1).
LaurentRational laurent_from_json(const Json& j, std::size_t arity);

Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

Json to_json(const LogPair& p);
// Returns a finalized pair.
LogPair pair_from_json(const Json& j);

Json to_json(const PluriForm& f);
Json to_json(const Form& f);
// Accepts one local expression or {"local": [expressions]}.
Form form_from_json(const Json& j, const LogPair& pair);

Json to_json(const SkeletonPoint& v);
SkeletonPoint point_from_json(const Json& j, Mode default_mode);

Json to_json(const KatoFan& k);
Json to_json(const SubFan& s);
Json to_json(const PolyComplex& c);

Json to_json(const GaussRecord& g);

// {"vertices": [labels], "facets": [[indices]]}, plus "action" (generator permutations) when given.
Json to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);
GroupAction action_from_json(const Json& j, std::size_t vertices);
// {"degree": [{"rank", "torsion"}]}
Json to_json(const HomologyProfile& h);
// Accepts the object form or a bare degree list.
HomologyProfile homology_from_json(const Json& j);
Json to_json(const TateResult& t);
Json to_json(const SphereMapReport& r);

Json read_json_file(const std::string& path);
// Deterministic text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace skel
