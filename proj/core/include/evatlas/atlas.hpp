#pragma once

// The atlas: a conflict-annotated multigraph over intervention/outcome tokens.
// Each non-empty bucket becomes one edge whose payload keeps every member
// claim, the conflict annotation, per-claim quality breakdowns and the index
// of the default kernel. Edges are sorted by key encoding, which together with
// canonical JSON makes serialization byte-stable.

#include "evatlas/bucketing.hpp"
#include "evatlas/config.hpp"
#include "evatlas/conflict.hpp"
#include "evatlas/quality.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace evatlas {

struct AtlasEdge {
    BucketKey key;
    std::vector<CanonicalClaim> claims;
    ConflictAnnotation conflict;
    std::size_t default_index = 0;
    std::vector<std::size_t> poolable_indices;
    std::vector<QualityBreakdown> quality;

    const std::string& x_id() const { return key.x_id; }
    const std::string& y_id() const { return key.y_id; }
    const CanonicalClaim& default_kernel() const { return claims[default_index]; }
};

struct RejectedClaim {
    std::string card_id;
    int effect_index = 0;
    std::string reason;

    bool operator==(const RejectedClaim&) const = default;
};

struct BuildReport {
    std::size_t cards = 0;
    std::size_t claims_seen = 0;
    std::size_t claims_compiled = 0;
    std::vector<RejectedClaim> rejected;
};

struct Atlas {
    std::vector<AtlasEdge> edges;  // sorted by key encoding
    BuildConfig config;
    std::string build_digest;  // content hash of (corpus, config)
    BuildReport report;

    const AtlasEdge* find_edge(const std::string& encoded_key) const;
};

// Annotate + select over each bucket and assemble the edge list. The digest is
// supplied by the caller (the compiler hashes its inputs before parallel work
// starts, so worker count cannot influence it).
Atlas build_atlas(std::vector<Bucket> buckets, const BuildConfig& cfg,
                  std::string build_digest = {});

} // namespace evatlas
