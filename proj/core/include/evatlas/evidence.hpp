#pragma once

// In-memory model of a reported effect claim: the estimand it targets
// (population, intervention contrast, outcome, raw time horizon, measure),
// the reported numbers, and the provenance needed for audit and selection.
// Everything here is a plain value type with structural equality.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evatlas {

// Lowercase, trim outer whitespace, collapse each internal whitespace run to a
// single hyphen. Applied to population buckets and intervention/outcome ids.
std::string normalize_token(std::string_view raw);

enum class ContrastType { PerUnit, Binary, ArmVsControl, Categorical };
enum class OutcomeType { Continuous, Binary, TimeToEvent };
enum class MeasureFamily { Ratio, Difference };
enum class ReportedScale { Ratio, LogRatio, Difference };
enum class Grade { A, B, C };
enum class Adjustment { None, Basic, Rich };

std::string_view to_string(ContrastType v);
std::string_view to_string(OutcomeType v);
std::string_view to_string(MeasureFamily v);
std::string_view to_string(ReportedScale v);
std::string_view to_string(Grade v);
std::string_view to_string(Adjustment v);

std::optional<ContrastType> parse_contrast_type(std::string_view token);
std::optional<OutcomeType> parse_outcome_type(std::string_view token);
std::optional<MeasureFamily> parse_measure_family(std::string_view token);
std::optional<ReportedScale> parse_reported_scale(std::string_view token);
std::optional<Grade> parse_grade(std::string_view token);
std::optional<Adjustment> parse_adjustment(std::string_view token);

struct PopulationSpec {
    std::string p_bucket;                          // normalized coarse token, e.g. "t2dm"
    std::map<std::string, std::string> p_setting;  // free-text descriptors, never keyed on

    bool operator==(const PopulationSpec&) const = default;
};

struct InterventionContrast {
    std::string intervention_id;  // normalized token
    ContrastType c_type = ContrastType::Binary;
    std::optional<double> delta;      // per_unit magnitude
    std::optional<std::string> unit;  // per_unit unit
    std::optional<std::string> x0;    // comparison level
    std::optional<std::string> x1;    // active level

    bool operator==(const InterventionContrast&) const = default;
};

struct OutcomeSpec {
    std::string outcome_id;  // normalized token
    OutcomeType outcome_type = OutcomeType::Binary;
    std::optional<std::string> unit;
    std::optional<std::string> notes;

    bool operator==(const OutcomeSpec&) const = default;
};

// Raw reporting horizon, before alignment. Unit tokens are validated against
// the configured conversion table when durations are extracted.
struct DurationHorizon {
    double value = 0.0;
    std::string unit;

    bool operator==(const DurationHorizon&) const = default;
};

struct IntervalHorizon {
    double length_value = 0.0;
    std::string length_unit;
    std::string reference;  // e.g. "randomization"

    bool operator==(const IntervalHorizon&) const = default;
};

struct TteHorizon {
    std::string event;
    std::optional<DurationHorizon> followup;  // median/mean follow-up when reported

    bool operator==(const TteHorizon&) const = default;
};

struct MissingHorizon {
    std::string reason;

    bool operator==(const MissingHorizon&) const = default;
};

using RawHorizon = std::variant<DurationHorizon, IntervalHorizon, TteHorizon, MissingHorizon>;

struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    double width() const { return upper - lower; }
    bool operator==(const Interval&) const = default;
};

struct MeasureFunctional {
    MeasureFamily m_family = MeasureFamily::Ratio;
    std::string m_type;  // e.g. "HR", "RR", "OR", "MD", "RD", "coef_cox"
    ReportedScale reported_scale = ReportedScale::Ratio;

    bool operator==(const MeasureFunctional&) const = default;
};

struct ClaimObject {
    double theta = 0.0;
    std::optional<Interval> ci;
    std::optional<double> se;
    std::optional<double> p_value;

    bool operator==(const ClaimObject&) const = default;
};

struct Provenance {
    std::string ref;  // bibliographic id (doi or similar)
    Grade grade = Grade::C;
    std::optional<std::int64_t> n;
    Adjustment adjustment = Adjustment::None;
    std::string card_id;
    int effect_index = 0;  // position of the claim within its card
    std::map<std::string, std::string> meta;  // extra deterministic fields, audit only

    bool operator==(const Provenance&) const = default;
};

// "card_id#effect_index" — the stable per-claim reference used in witnesses,
// build reports and manifests.
std::string claim_ref(const Provenance& p);

struct Estimand {
    PopulationSpec population;
    InterventionContrast contrast;
    OutcomeSpec outcome;
    RawHorizon horizon = MissingHorizon{"unspecified"};
    MeasureFunctional measure;

    bool operator==(const Estimand&) const = default;
};

struct EvidenceObject {
    Estimand estimand;
    ClaimObject claim;
    Provenance provenance;

    bool operator==(const EvidenceObject&) const = default;
};

// Measure-type vocabulary. A type is either a plain reported measure (HR, MD)
// or a model coefficient whose metadata binds it to the family's canonical
// scale (coef_cox == log HR, coef_linear == MD). Extensible via build config.
struct MeasureTypeInfo {
    MeasureFamily family = MeasureFamily::Ratio;
    bool bound_to_canonical = false;

    bool operator==(const MeasureTypeInfo&) const = default;
};

class MeasureRegistry {
  public:
    // HR/RR/OR (+ coef_cox, coef_logistic bound) and MD/RD (+ coef_linear bound).
    static const MeasureRegistry& defaults();

    void add(std::string m_type, MeasureTypeInfo info);
    const MeasureTypeInfo* find(std::string_view m_type) const;
    const std::map<std::string, MeasureTypeInfo>& types() const { return types_; }

    bool operator==(const MeasureRegistry&) const = default;

  private:
    std::map<std::string, MeasureTypeInfo> types_;
};

struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

// Structural invariant checks; every violation names the offending field and
// the rule it breaks. An object is compilable iff the result is empty.
std::vector<Violation> validate_evidence_object(
    const EvidenceObject& object,
    const MeasureRegistry& registry = MeasureRegistry::defaults());

} // namespace evatlas
