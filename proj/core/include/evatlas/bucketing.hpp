#pragma once

// Bucketing: canonical claims are grouped by a conservative six-field key
// (population bucket, intervention, outcome, horizon class, contrast type,
// measure family). Key equality *is* comparability; claims that additionally
// share the measure type are poolable. Numbers, settings, standard errors and
// provenance never enter the key.

#include "evatlas/canonicalize.hpp"
#include "evatlas/config.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace evatlas {

struct BucketKey {
    std::string p_bucket;
    std::string x_id;
    std::string y_id;
    CanonicalHorizonClass tau_class;
    ContrastType c_type = ContrastType::Binary;
    MeasureFamily m_family = MeasureFamily::Ratio;

    // Ablation adjustments, reflected in encode():
    std::optional<std::string> tau_raw_override;  // no_align_tau: raw horizon token
    bool drop_c_type = false;                     // weak_key
    std::vector<std::string> extra;               // no_canonical: (m_type, reported_scale)

    // Canonical "|"-joined string; doubles as the sort and equality witness.
    std::string encode() const;

    bool operator==(const BucketKey& other) const { return encode() == other.encode(); }
    bool operator<(const BucketKey& other) const { return encode() < other.encode(); }
};

// Key of a claim under the full (non-ablated) policy.
BucketKey bucket_key(const CanonicalClaim& claim);

// Key under a given ablation mode.
BucketKey bucket_key(const CanonicalClaim& claim, AblationMode mode);

// Comparability: same bucket key. Reflexive/symmetric/transitive by
// construction. Poolability additionally requires the same measure type.
bool comparable(const CanonicalClaim& a, const CanonicalClaim& b);
bool poolable(const CanonicalClaim& a, const CanonicalClaim& b);

struct Bucket {
    BucketKey key;
    std::vector<CanonicalClaim> claims;  // sorted by (card_id, effect_index)
};

using KeyMaker = std::function<BucketKey(const CanonicalClaim&)>;

// Group claims into buckets, sorted by key encoding; claim order inside each
// bucket is (card_id, effect_index), independent of input order.
std::vector<Bucket> partition(std::vector<CanonicalClaim> claims);
std::vector<Bucket> partition(std::vector<CanonicalClaim> claims, const KeyMaker& make_key);

} // namespace evatlas
