#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "thetacell/lifting.hpp"
#include "thetacell/presheaf.hpp"
#include "thetacell/realization.hpp"

namespace thetacell {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "thetacell/1";

// {"kind": "theta", "level", "bound"} or {"kind": "product", "first", "second", "bound"}.
Json category_to_json(const Category& c);
std::shared_ptr<const Category> category_from_json(const Json& j);

// Sizes per object and action tables for every non-identity face and
// degeneracy, which generate all arrows. Objects and arrows are named.
Json presheaf_to_json(const FinPresheaf& x);
FinPresheaf presheaf_from_json(const Json& j);

Json subobject_to_json(const Subobject& s);
Subobject subobject_from_json(const Json& j, const FinPresheaf& ambient);

Json map_to_json(const PresheafMap& f);
PresheafMap map_from_json(const Json& j);

// The four presheaves once, then the four maps as component tables.
Json lifting_problem_to_json(const LiftingProblem& p);
LiftingProblem lifting_problem_from_json(const Json& j);

Json certificate_to_json(const CellCertificate& c);
CellCertificate certificate_from_json(const Json& j);

Json enriched_to_json(const EnrichedCat& d);
EnrichedCat enriched_from_json(const Json& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace thetacell
