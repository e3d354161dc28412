#include "evatlas/quality.hpp"

#include "evatlas/errors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace evatlas {

ComponentScores component_scores(const CanonicalClaim& claim, const QualityConfig& cfg) {
    ComponentScores s;
    s.g = cfg.grade_score(claim.provenance.grade);

    if (claim.provenance.n) {
        double n = static_cast<double>(*claim.provenance.n);
        s.n = std::min(1.0, std::log1p(n) / std::log1p(static_cast<double>(cfg.n_max)));
    }

    if (claim.ci_canon) {
        double width = claim.ci_canon->width();
        // Degenerate (zero-width) intervals saturate at 1.
        s.p = width > 0.0 ? std::min(1.0, cfg.w_ref / width) : 1.0;
    }

    s.a = cfg.adjustment_score(claim.provenance.adjustment);
    return s;
}

QualityBreakdown quality_score(const CanonicalClaim& claim, const QualityConfig& cfg) {
    QualityBreakdown out;
    out.components = component_scores(claim, cfg);
    out.q = cfg.w_g * out.components.g + cfg.w_n * out.components.n +
            cfg.w_p * out.components.p + cfg.w_a * out.components.a;
    out.ref = claim.provenance.ref;
    out.card_id = claim.provenance.card_id;
    out.effect_index = claim.provenance.effect_index;
    return out;
}

bool quality_less(const QualityBreakdown& a, const QualityBreakdown& b) {
    return std::tie(a.q, a.components.g, a.components.a, a.components.p, a.components.n,
                    a.ref, a.card_id, a.effect_index) <
           std::tie(b.q, b.components.g, b.components.a, b.components.p, b.components.n,
                    b.ref, b.card_id, b.effect_index);
}

SelectionResult select_default(const Bucket& bucket, const QualityConfig& cfg) {
    if (bucket.claims.empty()) throw Error("select_default: bucket must be non-empty");

    SelectionResult out;
    out.breakdowns.reserve(bucket.claims.size());
    for (const auto& claim : bucket.claims)
        out.breakdowns.push_back(quality_score(claim, cfg));

    for (std::size_t i = 1; i < out.breakdowns.size(); ++i)
        if (quality_less(out.breakdowns[out.default_index], out.breakdowns[i]))
            out.default_index = i;

    const std::string& winner_type =
        bucket.claims[out.default_index].estimand.measure.m_type;
    for (std::size_t i = 0; i < bucket.claims.size(); ++i)
        if (bucket.claims[i].estimand.measure.m_type == winner_type)
            out.poolable_indices.push_back(i);

    return out;
}

} // namespace evatlas
