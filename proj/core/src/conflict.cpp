#include "evatlas/conflict.hpp"

#include <algorithm>
#include <cmath>

namespace evatlas {

std::string_view to_string(ConflictType v) {
    switch (v) {
        case ConflictType::Directional: return "directional";
        case ConflictType::Interval: return "interval";
        case ConflictType::Heterogeneity: return "heterogeneity";
    }
    return "?";
}

std::optional<ConflictType> parse_conflict_type(std::string_view token) {
    if (token == "directional") return ConflictType::Directional;
    if (token == "interval") return ConflictType::Interval;
    if (token == "heterogeneity") return ConflictType::Heterogeneity;
    return std::nullopt;
}

std::string_view to_string(Severity v) {
    switch (v) {
        case Severity::None: return "none";
        case Severity::Low: return "low";
        case Severity::Medium: return "medium";
        case Severity::High: return "high";
    }
    return "?";
}

std::optional<Severity> parse_severity(std::string_view token) {
    if (token == "none") return Severity::None;
    if (token == "low") return Severity::Low;
    if (token == "medium") return Severity::Medium;
    if (token == "high") return Severity::High;
    return std::nullopt;
}

bool ConflictAnnotation::has(ConflictType t) const {
    return std::find(types.begin(), types.end(), t) != types.end();
}

int significant_direction(const CanonicalClaim& claim) {
    if (!claim.ci_canon) return 0;
    if (claim.ci_canon->lower > 0.0) return 1;
    if (claim.ci_canon->upper < 0.0) return -1;
    return 0;
}

std::optional<ConflictWitness> detect_directional(const Bucket& bucket) {
    const auto& cs = bucket.claims;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        int di = significant_direction(cs[i]);
        if (di == 0) continue;
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            int dj = significant_direction(cs[j]);
            if (di * dj == -1)
                return ConflictWitness{ConflictType::Directional,
                                       {claim_ref(cs[i].provenance), claim_ref(cs[j].provenance)},
                                       static_cast<double>(di * dj)};
        }
    }
    return std::nullopt;
}

std::optional<ConflictWitness> detect_interval(const Bucket& bucket) {
    const auto& cs = bucket.claims;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].ci_canon) continue;
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (!cs[j].ci_canon) continue;
            const Interval& a = *cs[i].ci_canon;
            const Interval& b = *cs[j].ci_canon;
            // Closed-interval semantics: disjoint only with a strict gap.
            if (a.upper < b.lower || b.upper < a.lower)
                return ConflictWitness{ConflictType::Interval,
                                       {claim_ref(cs[i].provenance), claim_ref(cs[j].provenance)},
                                       std::max(b.lower - a.upper, a.lower - b.upper)};
        }
    }
    return std::nullopt;
}

DispersionResult dispersion(const Bucket& bucket, const HeterogeneityConfig& cfg) {
    DispersionResult out;
    const auto& cs = bucket.claims;
    if (cs.size() < 2) return out;

    bool all_n = cfg.weight_rule == WeightRule::SampleSize;
    if (all_n)
        for (const auto& c : cs)
            if (!c.provenance.n) {
                all_n = false;
                break;
            }

    out.weights.resize(cs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        out.weights[i] = all_n ? static_cast<double>(*cs[i].provenance.n) : 1.0;
        total += out.weights[i];
    }
    for (double& w : out.weights) w /= total;

    double mean = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) mean += out.weights[i] * cs[i].theta_canon;
    double d = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        double dev = cs[i].theta_canon - mean;
        d += out.weights[i] * dev * dev;
    }
    out.value = d;
    out.defined = true;
    return out;
}

ConflictAnnotation detect_conflicts(const Bucket& bucket, const HeterogeneityConfig& cfg) {
    ConflictAnnotation out;

    auto directional = detect_directional(bucket);
    auto interval = detect_interval(bucket);
    auto disp = dispersion(bucket, cfg);
    bool heterogeneous = disp.defined && disp.value >= cfg.delta_het;

    if (directional) {
        out.types.push_back(ConflictType::Directional);
        out.witnesses.push_back(std::move(*directional));
    }
    if (interval) {
        out.types.push_back(ConflictType::Interval);
        out.witnesses.push_back(std::move(*interval));
    }
    if (heterogeneous) {
        out.types.push_back(ConflictType::Heterogeneity);
        ConflictWitness w{ConflictType::Heterogeneity, {}, disp.value};
        w.claim_refs.reserve(bucket.claims.size());
        for (const auto& c : bucket.claims) w.claim_refs.push_back(claim_ref(c.provenance));
        out.witnesses.push_back(std::move(w));
    }

    out.severity = out.has(ConflictType::Directional) ? Severity::High
                   : out.has(ConflictType::Interval)  ? Severity::Medium
                   : heterogeneous                    ? Severity::Low
                                                      : Severity::None;
    return out;
}

} // namespace evatlas
