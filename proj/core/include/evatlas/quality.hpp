#pragma once

// Quality scoring and default-kernel selection. Four component scores in
// [0, 1] — grade, sample size (log-saturating), precision (reference width
// over interval width), adjustment — combine as a fixed convex sum. The best
// claim of a bucket is the lexicographic maximum of (Q, G, A, P, N, ref,
// card_id, effect_index), which is total and permutation-invariant.

#include "evatlas/bucketing.hpp"
#include "evatlas/config.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace evatlas {

struct ComponentScores {
    double g = 0.0;
    double n = 0.0;
    double p = 0.0;
    double a = 0.0;

    bool operator==(const ComponentScores&) const = default;
};

struct QualityBreakdown {
    ComponentScores components;
    double q = 0.0;
    // Deterministic tie-break tail.
    std::string ref;
    std::string card_id;
    int effect_index = 0;

    bool operator==(const QualityBreakdown&) const = default;
};

ComponentScores component_scores(const CanonicalClaim& claim, const QualityConfig& cfg);
QualityBreakdown quality_score(const CanonicalClaim& claim, const QualityConfig& cfg);

// Strict "worse-than" in selection order; !less(a,b) && !less(b,a) only for
// identical tuples.
bool quality_less(const QualityBreakdown& a, const QualityBreakdown& b);

struct SelectionResult {
    std::size_t default_index = 0;            // winner position within the bucket
    std::vector<std::size_t> poolable_indices;  // members sharing the winner's measure type
    std::vector<QualityBreakdown> breakdowns;   // aligned with bucket.claims
};

// Winner over the whole bucket (not per measure type); the poolable subset is
// derived from the winner's type afterwards. Empty buckets are a caller error.
SelectionResult select_default(const Bucket& bucket, const QualityConfig& cfg);

} // namespace evatlas
