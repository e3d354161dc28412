#include "evatlas/canonicalize.hpp"

#include "evatlas/errors.hpp"
#include "evatlas/numeric.hpp"

#include <cmath>

namespace evatlas {

std::string_view to_string(CanonScale v) {
    return v == CanonScale::Log ? "log" : "identity";
}

std::optional<CanonScale> parse_canon_scale(std::string_view token) {
    if (token == "log") return CanonScale::Log;
    if (token == "identity") return CanonScale::Identity;
    return std::nullopt;
}

std::string_view to_string(Rule v) {
    switch (v) {
        case Rule::R1: return "R1";
        case Rule::R2: return "R2";
        case Rule::R3: return "R3";
        case Rule::D1: return "D1";
        case Rule::D2: return "D2";
        case Rule::Identity: return "identity";
    }
    return "?";
}

std::optional<Rule> parse_rule(std::string_view token) {
    if (token == "R1") return Rule::R1;
    if (token == "R2") return Rule::R2;
    if (token == "R3") return Rule::R3;
    if (token == "D1") return Rule::D1;
    if (token == "D2") return Rule::D2;
    if (token == "identity") return Rule::Identity;
    return std::nullopt;
}

std::string_view to_string(UncertaintyKind v) {
    switch (v) {
        case UncertaintyKind::Reported: return "reported";
        case UncertaintyKind::DerivedFromSe: return "derived_from_se";
        case UncertaintyKind::DerivedFromP: return "derived_from_p";
        case UncertaintyKind::Missing: return "missing";
    }
    return "?";
}

std::optional<UncertaintyKind> parse_uncertainty_kind(std::string_view token) {
    if (token == "reported") return UncertaintyKind::Reported;
    if (token == "derived_from_se") return UncertaintyKind::DerivedFromSe;
    if (token == "derived_from_p") return UncertaintyKind::DerivedFromP;
    if (token == "missing") return UncertaintyKind::Missing;
    return std::nullopt;
}

MeasureSignature infer_signature(const MeasureFunctional& measure,
                                 const MeasureRegistry& registry) {
    const MeasureTypeInfo* info = registry.find(measure.m_type);
    if (info == nullptr)
        throw SignatureError("measure type '" + measure.m_type +
                             "' not in configured vocabulary");
    if (info->family != measure.m_family)
        throw SignatureError("declared family '" + std::string(to_string(measure.m_family)) +
                             "' contradicts the vocabulary for measure type '" +
                             measure.m_type + "'");
    return MeasureSignature{measure.m_family, measure.m_type, measure.reported_scale, {}};
}

Interval derive_ci_from_se(double theta, double se, double z) {
    return Interval{theta - z * se, theta + z * se};
}

std::optional<double> derive_se_from_p(double theta, double p) {
    if (theta == 0.0) return std::nullopt;
    return std::fabs(theta) / normal_quantile(1.0 - p / 2.0);
}

namespace {

// Rule applicability within the signature's family. Domain requirements (R1
// positivity) are checked after selection and reported as validity errors.
bool rule_applies(Rule rule, const MeasureSignature& sig, bool bound) {
    switch (rule) {
        case Rule::R1:
            return sig.m_family == MeasureFamily::Ratio &&
                   sig.s_rep == ReportedScale::Ratio && !bound;
        case Rule::R2:
            return sig.m_family == MeasureFamily::Ratio &&
                   sig.s_rep == ReportedScale::LogRatio && !bound;
        case Rule::R3:
            return sig.m_family == MeasureFamily::Ratio && bound;
        case Rule::D1:
            return sig.m_family == MeasureFamily::Difference &&
                   sig.s_rep == ReportedScale::Difference && !bound;
        case Rule::D2:
            return sig.m_family == MeasureFamily::Difference && bound;
        case Rule::Identity:
            return false;
    }
    return false;
}

constexpr Rule kPriority[] = {Rule::R2, Rule::R3, Rule::R1, Rule::D1, Rule::D2};

} // namespace

CanonicalizeResult canonicalize(const CanonicalInput& input, const BuildConfig& cfg) {
    ClaimRejection reject{input.provenance.card_id, input.provenance.effect_index, ""};

    MeasureSignature sig;
    try {
        sig = infer_signature(input.measure, cfg.measures);
    } catch (const SignatureError& e) {
        reject.reason = e.what();
        return reject;
    }
    const bool bound = cfg.measures.find(sig.m_type)->bound_to_canonical;

    Rule rule = Rule::Identity;
    std::vector<Rule> discarded;
    bool chosen = false;
    for (Rule candidate : kPriority) {
        if (!rule_applies(candidate, sig, bound)) continue;
        if (!chosen) {
            rule = candidate;
            chosen = true;
        } else {
            discarded.push_back(candidate);
        }
    }

    ConditionsAlpha alpha;
    alpha.signature = sig;
    alpha.rule_applied = rule;
    alpha.discarded_rules = std::move(discarded);

    // Horizon alignment (identity on already-canonical classes).
    CanonicalHorizonClass horizon;
    if (const auto* raw = std::get_if<RawHorizon>(&input.horizon)) {
        try {
            auto [cls, record] = align(*raw, cfg.alignment);
            horizon = cls;
            alpha.alignment = std::move(record);
        } catch (const UnknownUnitError& e) {
            reject.reason = e.what();
            return reject;
        }
    } else {
        horizon = std::get<CanonicalHorizonClass>(input.horizon);
        alpha.alignment.raw_horizon = MissingHorizon{"already canonical"};
        alpha.alignment.matched_bin = horizon.h_bin;
    }

    // Scale rewrite. Only R1 moves numbers; everything else is exact identity.
    const bool transform = cfg.ablation != AblationMode::NoCanonical && rule == Rule::R1;
    double theta = input.claim.theta;
    std::optional<Interval> ci = input.claim.ci;
    if (transform) {
        if (!(theta > 0.0)) {
            alpha.validity_flags.push_back("nonpositive ratio point estimate");
            reject.reason = "theta must be > 0 on ratio scale";
            return reject;
        }
        if (ci && (!(ci->lower > 0.0) || !(ci->upper > 0.0))) {
            alpha.validity_flags.push_back("nonpositive ratio interval endpoint");
            reject.reason = "ratio-scale interval endpoints must be > 0";
            return reject;
        }
        theta = std::log(theta);
        if (ci) ci = Interval{std::log(ci->lower), std::log(ci->upper)};
    }

    // Uncertainty: a reported interval wins; otherwise derive one from the
    // standard error (canonical scale), else from the p-value. Reported se/p
    // are kept in the record so reconstruction can restore them.
    UncertaintyRecord unc;
    unc.reported_se = input.claim.se;
    unc.reported_p = input.claim.p_value;
    if (ci) {
        unc.kind = UncertaintyKind::Reported;
    } else if (input.claim.se) {
        if (!(*input.claim.se > 0.0)) {
            reject.reason = "standard error must be > 0";
            return reject;
        }
        unc.kind = UncertaintyKind::DerivedFromSe;
        unc.z = cfg.z();
        ci = derive_ci_from_se(theta, *input.claim.se, *unc.z);
    } else if (input.claim.p_value) {
        if (!(*input.claim.p_value > 0.0 && *input.claim.p_value < 1.0)) {
            reject.reason = "p-value must lie strictly inside (0, 1)";
            return reject;
        }
        if (auto se = derive_se_from_p(theta, *input.claim.p_value)) {
            unc.kind = UncertaintyKind::DerivedFromP;
            unc.z = cfg.z();
            unc.derived_se = se;
            ci = derive_ci_from_se(theta, *se, *unc.z);
        } else {
            unc.kind = UncertaintyKind::Missing;  // theta == 0: no magnitude to invert
        }
    } else {
        unc.kind = UncertaintyKind::Missing;
    }
    alpha.uncertainty = std::move(unc);

    CanonicalClaim out;
    out.estimand.population = input.population;
    out.estimand.contrast = input.contrast;
    out.estimand.outcome = input.outcome;
    out.estimand.horizon = horizon;
    out.estimand.measure = CanonicalMeasure{
        sig.m_family, sig.m_type,
        sig.m_family == MeasureFamily::Ratio ? CanonScale::Log : CanonScale::Identity};
    out.theta_canon = theta;
    out.ci_canon = ci;
    out.alpha = std::move(alpha);
    out.provenance = input.provenance;
    return out;
}

CanonicalizeResult canonicalize(const EvidenceObject& object, const BuildConfig& cfg) {
    CanonicalInput input;
    input.population = object.estimand.population;
    input.contrast = object.estimand.contrast;
    input.outcome = object.estimand.outcome;
    input.horizon = object.estimand.horizon;
    input.measure = object.estimand.measure;
    input.claim = object.claim;
    input.provenance = object.provenance;
    return canonicalize(input, cfg);
}

CanonicalInput reinject(const CanonicalClaim& claim) {
    CanonicalInput input;
    input.population = claim.estimand.population;
    input.contrast = claim.estimand.contrast;
    input.outcome = claim.estimand.outcome;
    input.horizon = claim.estimand.horizon;
    input.measure = MeasureFunctional{
        claim.estimand.measure.m_family, claim.estimand.measure.m_type,
        claim.estimand.measure.m_family == MeasureFamily::Ratio ? ReportedScale::LogRatio
                                                                : ReportedScale::Difference};
    input.claim = ClaimObject{claim.theta_canon, claim.ci_canon, std::nullopt, std::nullopt};
    input.provenance = claim.provenance;
    return input;
}

EvidenceObject reconstruct(const CanonicalClaim& claim) {
    const auto& alpha = claim.alpha;
    const auto& sig = alpha.signature;

    bool log_applied;
    switch (alpha.rule_applied) {
        case Rule::R1: log_applied = true; break;
        case Rule::R2:
        case Rule::R3:
        case Rule::D1:
        case Rule::D2:
        case Rule::Identity: log_applied = false; break;
        default:
            throw ReconstructionError("conditions block names an unknown rule");
    }
    if (log_applied && sig.s_rep != ReportedScale::Ratio)
        throw ReconstructionError(
            "conditions block pairs a log rewrite with a non-ratio reported scale");

    EvidenceObject out;
    out.estimand.population = claim.estimand.population;
    out.estimand.contrast = claim.estimand.contrast;
    out.estimand.outcome = claim.estimand.outcome;
    out.estimand.horizon = alpha.alignment.raw_horizon;
    out.estimand.measure = MeasureFunctional{sig.m_family, sig.m_type, sig.s_rep};

    out.claim.theta = log_applied ? std::exp(claim.theta_canon) : claim.theta_canon;
    if (alpha.uncertainty.kind == UncertaintyKind::Reported) {
        if (!claim.ci_canon)
            throw ReconstructionError("reported-interval record without a canonical interval");
        out.claim.ci = log_applied ? Interval{std::exp(claim.ci_canon->lower),
                                              std::exp(claim.ci_canon->upper)}
                                   : *claim.ci_canon;
    }
    out.claim.se = alpha.uncertainty.reported_se;
    out.claim.p_value = alpha.uncertainty.reported_p;

    out.provenance = claim.provenance;
    return out;
}

} // namespace evatlas
