#pragma once

// Conflict taxonomy over a bucket of comparable claims, all on the same
// canonical scale:
//   directional    — two claims significant in opposite directions
//   interval       — two claims with disjoint confidence intervals (closed
//                    endpoints: touching intervals still overlap)
//   heterogeneity  — weighted dispersion of the point estimates at or above
//                    the configured threshold
// Severity ladder: directional > interval > heterogeneity > none.

#include "evatlas/bucketing.hpp"
#include "evatlas/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace evatlas {

enum class ConflictType { Directional, Interval, Heterogeneity };
std::string_view to_string(ConflictType v);
std::optional<ConflictType> parse_conflict_type(std::string_view token);

enum class Severity { None, Low, Medium, High };
std::string_view to_string(Severity v);
std::optional<Severity> parse_severity(std::string_view token);

struct ConflictWitness {
    ConflictType type = ConflictType::Directional;
    std::vector<std::string> claim_refs;  // pair for directional/interval, all members for heterogeneity
    double statistic = 0.0;  // sign product / interval gap / dispersion value

    bool operator==(const ConflictWitness&) const = default;
};

struct ConflictAnnotation {
    std::vector<ConflictType> types;  // sorted: directional, interval, heterogeneity
    Severity severity = Severity::None;
    std::vector<ConflictWitness> witnesses;

    bool has(ConflictType t) const;
    bool operator==(const ConflictAnnotation&) const = default;
};

// +1 when the interval lies above zero, -1 when below, 0 when it straddles
// zero or no interval is available.
int significant_direction(const CanonicalClaim& claim);

// First witnessing pair in the bucket's canonical claim order, if any.
std::optional<ConflictWitness> detect_directional(const Bucket& bucket);
std::optional<ConflictWitness> detect_interval(const Bucket& bucket);

struct DispersionResult {
    double value = 0.0;
    std::vector<double> weights;  // normalized; aligned with bucket.claims
    bool defined = false;         // false when the bucket has fewer than two claims
};

// Weighted variance of the canonical point estimates. Sample-size weights
// require every member to carry n; otherwise weights fall back to uniform.
DispersionResult dispersion(const Bucket& bucket, const HeterogeneityConfig& cfg);

ConflictAnnotation detect_conflicts(const Bucket& bucket, const HeterogeneityConfig& cfg);

} // namespace evatlas
