#include "evatlas/bucketing.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace evatlas {

std::string BucketKey::encode() const {
    std::string out;
    out.reserve(64);
    out += p_bucket;
    out += '|';
    out += x_id;
    out += '|';
    out += y_id;
    out += '|';
    out += tau_raw_override ? *tau_raw_override : tau_class.encode();
    if (!drop_c_type) {
        out += '|';
        out += to_string(c_type);
    }
    out += '|';
    out += to_string(m_family);
    for (const auto& field : extra) {
        out += '|';
        out += field;
    }
    return out;
}

BucketKey bucket_key(const CanonicalClaim& claim) {
    return bucket_key(claim, AblationMode::None);
}

BucketKey bucket_key(const CanonicalClaim& claim, AblationMode mode) {
    BucketKey key;
    key.p_bucket = claim.estimand.population.p_bucket;
    key.x_id = claim.estimand.contrast.intervention_id;
    key.y_id = claim.estimand.outcome.outcome_id;
    key.tau_class = claim.estimand.horizon;
    key.c_type = claim.estimand.contrast.c_type;
    key.m_family = claim.estimand.measure.m_family;
    switch (mode) {
        case AblationMode::None:
            break;
        case AblationMode::NoCanonical:
            key.extra.push_back(claim.estimand.measure.m_type);
            key.extra.emplace_back(to_string(claim.alpha.signature.s_rep));
            break;
        case AblationMode::NoAlignTau:
            key.tau_raw_override = raw_horizon_token(claim.alpha.alignment.raw_horizon);
            break;
        case AblationMode::WeakKey:
            key.drop_c_type = true;
            break;
    }
    return key;
}

bool comparable(const CanonicalClaim& a, const CanonicalClaim& b) {
    return bucket_key(a) == bucket_key(b);
}

bool poolable(const CanonicalClaim& a, const CanonicalClaim& b) {
    return comparable(a, b) && a.estimand.measure.m_type == b.estimand.measure.m_type;
}

std::vector<Bucket> partition(std::vector<CanonicalClaim> claims) {
    return partition(std::move(claims),
                     [](const CanonicalClaim& c) { return bucket_key(c); });
}

std::vector<Bucket> partition(std::vector<CanonicalClaim> claims, const KeyMaker& make_key) {
    std::map<std::string, Bucket> by_key;
    for (auto& claim : claims) {
        BucketKey key = make_key(claim);
        std::string encoded = key.encode();
        auto [it, inserted] = by_key.try_emplace(std::move(encoded));
        if (inserted) it->second.key = std::move(key);
        it->second.claims.push_back(std::move(claim));
    }

    std::vector<Bucket> out;
    out.reserve(by_key.size());
    for (auto& [encoded, bucket] : by_key) {
        std::sort(bucket.claims.begin(), bucket.claims.end(),
                  [](const CanonicalClaim& a, const CanonicalClaim& b) {
                      return std::tie(a.provenance.card_id, a.provenance.effect_index) <
                             std::tie(b.provenance.card_id, b.provenance.effect_index);
                  });
        out.push_back(std::move(bucket));
    }
    return out;
}

} // namespace evatlas
