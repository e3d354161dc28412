#pragma once

// Private JSON (de)serialization helpers. nlohmann::json with std::map
// object storage keeps keys sorted, so documents are canonical byte-for-byte
// once the edge order is fixed. Absent optionals are omitted, not null.

#include "evatlas/atlas.hpp"
#include "evatlas/canonicalize.hpp"
#include "evatlas/config.hpp"
#include "evatlas/errors.hpp"
#include "evatlas/query.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace evatlas::serde {

using json = nlohmann::json;

inline const json& need(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null())
        throw ParseError(ctx + ": missing required field '" + key + "'");
    return *it;
}

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& value) {
    auto it = j.find(key);
    if (it != j.end() && !it->is_null())
        value = it->get<T>();
    else
        value.reset();
}

template <class Enum, class Parse>
Enum parse_enum(const json& j, const char* key, Parse parse, const std::string& ctx) {
    const json& field = need(j, key, ctx);
    if (!field.is_string()) throw ParseError(ctx + ": field '" + key + "' must be a string");
    auto value = parse(field.get<std::string>());
    if (!value)
        throw ParseError(ctx + ": unknown token '" + field.get<std::string>() + "' for '" +
                         key + "'");
    return *value;
}

// --- evidence types -------------------------------------------------------

json interval_to_json(const Interval& v);
Interval interval_from_json(const json& j, const std::string& ctx);

json horizon_to_json(const RawHorizon& v);
RawHorizon horizon_from_json(const json& j, const std::string& ctx);

json population_to_json(const PopulationSpec& v);
PopulationSpec population_from_json(const json& j, const std::string& ctx);

json contrast_to_json(const InterventionContrast& v);
InterventionContrast contrast_from_json(const json& j, const std::string& ctx);

json outcome_to_json(const OutcomeSpec& v);
OutcomeSpec outcome_from_json(const json& j, const std::string& ctx);

json measure_to_json(const MeasureFunctional& v);
MeasureFunctional measure_from_json(const json& j, const std::string& ctx);

json claim_to_json(const ClaimObject& v);
ClaimObject claim_from_json(const json& j, const std::string& ctx);

json provenance_to_json(const Provenance& v);
Provenance provenance_from_json(const json& j, const std::string& ctx);

// --- canonical types ------------------------------------------------------

json alignment_record_to_json(const AlignmentRecord& v);
AlignmentRecord alignment_record_from_json(const json& j, const std::string& ctx);

json canonical_claim_to_json(const CanonicalClaim& v);
CanonicalClaim canonical_claim_from_json(const json& j, const std::string& ctx);

json bucket_key_to_json(const BucketKey& v);
BucketKey bucket_key_from_json(const json& j, const std::string& ctx);

json conflict_to_json(const ConflictAnnotation& v);
ConflictAnnotation conflict_from_json(const json& j, const std::string& ctx);

json quality_breakdown_to_json(const QualityBreakdown& v);
QualityBreakdown quality_breakdown_from_json(const json& j, const std::string& ctx);

// --- config and atlas -----------------------------------------------------

json build_config_to_json_obj(const BuildConfig& v);
BuildConfig build_config_from_json_obj(const json& j);

json atlas_to_json_obj(const Atlas& v);
Atlas atlas_from_json_obj(const json& j);

json answer_to_json_obj(const AnswerObject& v);

} // namespace evatlas::serde
