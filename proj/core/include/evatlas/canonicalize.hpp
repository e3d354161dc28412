#pragma once

// Canonicalization: rewrite every admissible claim onto the family's canonical
// scale (log for ratio measures, identity for differences) and record how in a
// conditions block. The rewrite is exact — only representation changes — so a
// reconstruction map can recover the reported claim.
//
// Rule vocabulary, applied first-match within the claim's family using the
// fixed priority R2 > R3 > R1 > D1 > D2:
//   R1  reported positive ratio            -> log-transform point and interval
//   R2  reported log-ratio                 -> identity
//   R3  coefficient bound to the log-ratio -> identity (binding from the
//                                             measure-type vocabulary)
//   D1  reported difference                -> identity
//   D2  coefficient bound to a difference  -> identity
// When no rule applies the claim passes through unchanged under an explicit
// `identity` tag.

#include "evatlas/config.hpp"
#include "evatlas/evidence.hpp"
#include "evatlas/horizon.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace evatlas {

enum class CanonScale { Log, Identity };
std::string_view to_string(CanonScale v);
std::optional<CanonScale> parse_canon_scale(std::string_view token);

struct CanonicalMeasure {
    MeasureFamily m_family = MeasureFamily::Ratio;
    std::string m_type;  // reported type tag preserved verbatim
    CanonScale s_canon = CanonScale::Log;

    bool operator==(const CanonicalMeasure&) const = default;
};

struct MeasureSignature {
    MeasureFamily m_family = MeasureFamily::Ratio;
    std::string m_type;
    ReportedScale s_rep = ReportedScale::Ratio;
    std::vector<std::string> competing;  // alternative readings that were set aside

    bool operator==(const MeasureSignature&) const = default;
};

enum class Rule { R1, R2, R3, D1, D2, Identity };
std::string_view to_string(Rule v);
std::optional<Rule> parse_rule(std::string_view token);

enum class UncertaintyKind { Reported, DerivedFromSe, DerivedFromP, Missing };
std::string_view to_string(UncertaintyKind v);
std::optional<UncertaintyKind> parse_uncertainty_kind(std::string_view token);

struct UncertaintyRecord {
    UncertaintyKind kind = UncertaintyKind::Missing;
    std::optional<double> z;            // critical value used for a derived interval
    std::optional<double> reported_se;  // kept even when the interval wins
    std::optional<double> reported_p;
    std::optional<double> derived_se;   // standard error recovered from a p-value

    bool operator==(const UncertaintyRecord&) const = default;
};

struct ConditionsAlpha {
    MeasureSignature signature;
    Rule rule_applied = Rule::Identity;
    std::vector<Rule> discarded_rules;  // applicable but outranked
    UncertaintyRecord uncertainty;
    std::vector<std::string> validity_flags;
    AlignmentRecord alignment;

    bool operator==(const ConditionsAlpha&) const = default;
};

struct CanonicalEstimand {
    PopulationSpec population;
    InterventionContrast contrast;
    OutcomeSpec outcome;
    CanonicalHorizonClass horizon;
    CanonicalMeasure measure;

    bool operator==(const CanonicalEstimand&) const = default;
};

struct CanonicalClaim {
    CanonicalEstimand estimand;
    double theta_canon = 0.0;
    std::optional<Interval> ci_canon;
    ConditionsAlpha alpha;
    Provenance provenance;

    bool operator==(const CanonicalClaim&) const = default;
};

struct ClaimRejection {
    std::string card_id;
    int effect_index = 0;
    std::string reason;

    bool operator==(const ClaimRejection&) const = default;
};

using CanonicalizeResult = std::variant<CanonicalClaim, ClaimRejection>;

// Canonicalization input with the horizon domain extended to canonical
// classes, so that already-canonical claims can be fed back through the
// operator (idempotence).
struct CanonicalInput {
    PopulationSpec population;
    InterventionContrast contrast;
    OutcomeSpec outcome;
    HorizonOrClass horizon = RawHorizon{MissingHorizon{"unspecified"}};
    MeasureFunctional measure;
    ClaimObject claim;
    Provenance provenance;
};

// Read the measure signature off the claim's declared fields; throws
// SignatureError when the declared family contradicts the type vocabulary.
MeasureSignature infer_signature(const MeasureFunctional& measure,
                                 const MeasureRegistry& registry);

// theta +- z * se.
Interval derive_ci_from_se(double theta, double se, double z);

// |theta| / Phi^-1(1 - p/2); empty when theta == 0 (the magnitude carries no
// scale information there).
std::optional<double> derive_se_from_p(double theta, double p);

CanonicalizeResult canonicalize(const EvidenceObject& object, const BuildConfig& cfg);
CanonicalizeResult canonicalize(const CanonicalInput& input, const BuildConfig& cfg);

// Reinterpret an already-canonical claim as operator input on the canonical
// scale. canonicalize(reinject(x)) reproduces x's estimand and numbers.
CanonicalInput reinject(const CanonicalClaim& claim);

/// Inverse representation map: undo the scale rewrite, restore the reported
// scale tag, the recorded raw horizon, and reported se/p. Throws
// ReconstructionError on a malformed conditions block.
EvidenceObject reconstruct(const CanonicalClaim& claim);

} // namespace evatlas
