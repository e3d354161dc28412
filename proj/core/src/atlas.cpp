#include "evatlas/atlas.hpp"

#include <algorithm>

namespace evatlas {

const AtlasEdge* Atlas::find_edge(const std::string& encoded_key) const {
    for (const auto& edge : edges)
        if (edge.key.encode() == encoded_key) return &edge;
    return nullptr;
}

Atlas build_atlas(std::vector<Bucket> buckets, const BuildConfig& cfg,
                  std::string build_digest) {
    Atlas atlas;
    atlas.config = cfg;
    atlas.build_digest = std::move(build_digest);
    atlas.edges.reserve(buckets.size());

    for (auto& bucket : buckets) {
        if (bucket.claims.empty()) continue;
        AtlasEdge edge;
        edge.conflict = detect_conflicts(bucket, cfg.heterogeneity);
        SelectionResult selection = select_default(bucket, cfg.quality);
        edge.default_index = selection.default_index;
        edge.poolable_indices = std::move(selection.poolable_indices);
        edge.quality = std::move(selection.breakdowns);
        edge.key = std::move(bucket.key);
        edge.claims = std::move(bucket.claims);
        atlas.edges.push_back(std::move(edge));
    }

    std::sort(atlas.edges.begin(), atlas.edges.end(),
              [](const AtlasEdge& a, const AtlasEdge& b) {
                  return a.key.encode() < b.key.encode();
              });
    return atlas;
}

} // namespace evatlas
