#include "serde.hpp"

namespace evatlas::serde {

json interval_to_json(const Interval& v) {
    return json::array({v.lower, v.upper});
}

Interval interval_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(ctx + ": interval must be a two-number array");
    return Interval{j[0].get<double>(), j[1].get<double>()};
}

json horizon_to_json(const RawHorizon& v) {
    json j;
    if (const auto* d = std::get_if<DurationHorizon>(&v)) {
        j["kind"] = "duration";
        j["value"] = d->value;
        j["unit"] = d->unit;
    } else if (const auto* iv = std::get_if<IntervalHorizon>(&v)) {
        j["kind"] = "interval";
        j["value"] = iv->length_value;
        j["unit"] = iv->length_unit;
        j["reference"] = iv->reference;
    } else if (const auto* t = std::get_if<TteHorizon>(&v)) {
        j["kind"] = "tte";
        j["event"] = t->event;
        if (t->followup) {
            j["followup"] = json{{"value", t->followup->value}, {"unit", t->followup->unit}};
        }
    } else {
        j["kind"] = "missing";
        j["reason"] = std::get<MissingHorizon>(v).reason;
    }
    return j;
}

RawHorizon horizon_from_json(const json& j, const std::string& ctx) {
    const std::string kind = need(j, "kind", ctx).get<std::string>();
    if (kind == "duration") {
        return DurationHorizon{need(j, "value", ctx).get<double>(),
                               need(j, "unit", ctx).get<std::string>()};
    }
    if (kind == "interval") {
        return IntervalHorizon{need(j, "value", ctx).get<double>(),
                               need(j, "unit", ctx).get<std::string>(),
                               need(j, "reference", ctx).get<std::string>()};
    }
    if (kind == "tte") {
        TteHorizon t;
        t.event = need(j, "event", ctx).get<std::string>();
        if (auto it = j.find("followup"); it != j.end() && !it->is_null())
            t.followup = DurationHorizon{need(*it, "value", ctx + ".followup").get<double>(),
                                         need(*it, "unit", ctx + ".followup").get<std::string>()};
        return t;
    }
    if (kind == "missing")
        return MissingHorizon{need(j, "reason", ctx).get<std::string>()};
    throw ParseError(ctx + ": unknown horizon kind '" + kind + "'");
}

json population_to_json(const PopulationSpec& v) {
    json j;
    j["bucket"] = v.p_bucket;
    if (!v.p_setting.empty()) j["setting"] = v.p_setting;
    return j;
}

PopulationSpec population_from_json(const json& j, const std::string& ctx) {
    PopulationSpec out;
    out.p_bucket = normalize_token(need(j, "bucket", ctx).get<std::string>());
    if (auto it = j.find("setting"); it != j.end() && it->is_object())
        out.p_setting = it->get<std::map<std::string, std::string>>();
    return out;
}

json contrast_to_json(const InterventionContrast& v) {
    json j;
    j["id"] = v.intervention_id;
    j["contrast_type"] = to_string(v.c_type);
    put_opt(j, "delta", v.delta);
    put_opt(j, "unit", v.unit);
    put_opt(j, "x0", v.x0);
    put_opt(j, "x1", v.x1);
    return j;
}

InterventionContrast contrast_from_json(const json& j, const std::string& ctx) {
    InterventionContrast out;
    out.intervention_id = normalize_token(need(j, "id", ctx).get<std::string>());
    out.c_type = parse_enum<ContrastType>(j, "contrast_type", parse_contrast_type, ctx);
    get_opt(j, "delta", out.delta);
    get_opt(j, "unit", out.unit);
    get_opt(j, "x0", out.x0);
    get_opt(j, "x1", out.x1);
    return out;
}

json outcome_to_json(const OutcomeSpec& v) {
    json j;
    j["id"] = v.outcome_id;
    j["type"] = to_string(v.outcome_type);
    put_opt(j, "unit", v.unit);
    put_opt(j, "notes", v.notes);
    return j;
}

OutcomeSpec outcome_from_json(const json& j, const std::string& ctx) {
    OutcomeSpec out;
    out.outcome_id = normalize_token(need(j, "id", ctx).get<std::string>());
    out.outcome_type = parse_enum<OutcomeType>(j, "type", parse_outcome_type, ctx);
    get_opt(j, "unit", out.unit);
    get_opt(j, "notes", out.notes);
    return out;
}

json measure_to_json(const MeasureFunctional& v) {
    json j;
    j["family"] = to_string(v.m_family);
    j["type"] = v.m_type;
    j["reported_scale"] = to_string(v.reported_scale);
    return j;
}

MeasureFunctional measure_from_json(const json& j, const std::string& ctx) {
    MeasureFunctional out;
    out.m_family = parse_enum<MeasureFamily>(j, "family", parse_measure_family, ctx);
    out.m_type = need(j, "type", ctx).get<std::string>();
    out.reported_scale = parse_enum<ReportedScale>(j, "reported_scale", parse_reported_scale, ctx);
    return out;
}

json claim_to_json(const ClaimObject& v) {
    json j;
    j["point"] = v.theta;
    if (v.ci) j["ci"] = interval_to_json(*v.ci);
    put_opt(j, "se", v.se);
    put_opt(j, "p", v.p_value);
    return j;
}

ClaimObject claim_from_json(const json& j, const std::string& ctx) {
    ClaimObject out;
    out.theta = need(j, "point", ctx).get<double>();
    if (auto it = j.find("ci"); it != j.end() && !it->is_null())
        out.ci = interval_from_json(*it, ctx + ".ci");
    get_opt(j, "se", out.se);
    get_opt(j, "p", out.p_value);
    return out;
}

json provenance_to_json(const Provenance& v) {
    json j;
    j["ref"] = v.ref;
    j["grade"] = to_string(v.grade);
    put_opt(j, "n", v.n);
    j["adjustment"] = to_string(v.adjustment);
    j["card_id"] = v.card_id;
    j["effect_index"] = v.effect_index;
    if (!v.meta.empty()) j["meta"] = v.meta;
    return j;
}

Provenance provenance_from_json(const json& j, const std::string& ctx) {
    Provenance out;
    out.ref = need(j, "ref", ctx).get<std::string>();
    out.grade = parse_enum<Grade>(j, "grade", parse_grade, ctx);
    get_opt(j, "n", out.n);
    out.adjustment = parse_enum<Adjustment>(j, "adjustment", parse_adjustment, ctx);
    out.card_id = need(j, "card_id", ctx).get<std::string>();
    out.effect_index = need(j, "effect_index", ctx).get<int>();
    if (auto it = j.find("meta"); it != j.end() && it->is_object())
        out.meta = it->get<std::map<std::string, std::string>>();
    return out;
}

json alignment_record_to_json(const AlignmentRecord& v) {
    json j;
    j["raw_horizon"] = horizon_to_json(v.raw_horizon);
    put_opt(j, "extracted_days", v.extracted_days);
    j["fuzzy_used"] = v.fuzzy_used;
    put_opt(j, "matched_bin", v.matched_bin);
    put_opt(j, "relative_diff", v.relative_diff);
    return j;
}

AlignmentRecord alignment_record_from_json(const json& j, const std::string& ctx) {
    AlignmentRecord out;
    out.raw_horizon = horizon_from_json(need(j, "raw_horizon", ctx), ctx + ".raw_horizon");
    get_opt(j, "extracted_days", out.extracted_days);
    out.fuzzy_used = need(j, "fuzzy_used", ctx).get<bool>();
    get_opt(j, "matched_bin", out.matched_bin);
    get_opt(j, "relative_diff", out.relative_diff);
    return out;
}

namespace {

CanonicalHorizonClass horizon_class_from_json(const json& j, const std::string& ctx) {
    if (!j.is_string()) throw ParseError(ctx + ": horizon class must be a string");
    auto cls = CanonicalHorizonClass::decode(j.get<std::string>());
    if (!cls) throw ParseError(ctx + ": malformed horizon class '" + j.get<std::string>() + "'");
    return *cls;
}

json signature_to_json(const MeasureSignature& v) {
    json j;
    j["family"] = to_string(v.m_family);
    j["type"] = v.m_type;
    j["reported_scale"] = to_string(v.s_rep);
    if (!v.competing.empty()) j["competing"] = v.competing;
    return j;
}

MeasureSignature signature_from_json(const json& j, const std::string& ctx) {
    MeasureSignature out;
    out.m_family = parse_enum<MeasureFamily>(j, "family", parse_measure_family, ctx);
    out.m_type = need(j, "type", ctx).get<std::string>();
    out.s_rep = parse_enum<ReportedScale>(j, "reported_scale", parse_reported_scale, ctx);
    if (auto it = j.find("competing"); it != j.end() && it->is_array())
        out.competing = it->get<std::vector<std::string>>();
    return out;
}

json uncertainty_to_json(const UncertaintyRecord& v) {
    json j;
    j["kind"] = to_string(v.kind);
    put_opt(j, "z", v.z);
    put_opt(j, "reported_se", v.reported_se);
    put_opt(j, "reported_p", v.reported_p);
    put_opt(j, "derived_se", v.derived_se);
    return j;
}

UncertaintyRecord uncertainty_from_json(const json& j, const std::string& ctx) {
    UncertaintyRecord out;
    out.kind = parse_enum<UncertaintyKind>(j, "kind", parse_uncertainty_kind, ctx);
    get_opt(j, "z", out.z);
    get_opt(j, "reported_se", out.reported_se);
    get_opt(j, "reported_p", out.reported_p);
    get_opt(j, "derived_se", out.derived_se);
    return out;
}

json rules_to_json(const std::vector<Rule>& rules) {
    json j = json::array();
    for (Rule r : rules) j.push_back(std::string(to_string(r)));
    return j;
}

std::vector<Rule> rules_from_json(const json& j, const std::string& ctx) {
    std::vector<Rule> out;
    for (const auto& item : j) {
        auto rule = parse_rule(item.get<std::string>());
        if (!rule) throw ParseError(ctx + ": unknown rule token '" + item.get<std::string>() + "'");
        out.push_back(*rule);
    }
    return out;
}

} // namespace

json canonical_claim_to_json(const CanonicalClaim& v) {
    json estimand;
    estimand["population"] = population_to_json(v.estimand.population);
    estimand["contrast"] = contrast_to_json(v.estimand.contrast);
    estimand["outcome"] = outcome_to_json(v.estimand.outcome);
    estimand["horizon"] = v.estimand.horizon.encode();
    estimand["measure"] = json{{"family", to_string(v.estimand.measure.m_family)},
                               {"type", v.estimand.measure.m_type},
                               {"canonical_scale", to_string(v.estimand.measure.s_canon)}};

    json alpha;
    alpha["signature"] = signature_to_json(v.alpha.signature);
    alpha["rule"] = to_string(v.alpha.rule_applied);
    alpha["discarded_rules"] = rules_to_json(v.alpha.discarded_rules);
    alpha["uncertainty"] = uncertainty_to_json(v.alpha.uncertainty);
    alpha["validity_flags"] = v.alpha.validity_flags;
    alpha["alignment"] = alignment_record_to_json(v.alpha.alignment);

    json j;
    j["estimand"] = std::move(estimand);
    j["theta_canon"] = v.theta_canon;
    if (v.ci_canon) j["ci_canon"] = interval_to_json(*v.ci_canon);
    j["alpha"] = std::move(alpha);
    j["provenance"] = provenance_to_json(v.provenance);
    return j;
}

CanonicalClaim canonical_claim_from_json(const json& j, const std::string& ctx) {
    CanonicalClaim out;
    const json& estimand = need(j, "estimand", ctx);
    out.estimand.population = population_from_json(need(estimand, "population", ctx), ctx);
    out.estimand.contrast = contrast_from_json(need(estimand, "contrast", ctx), ctx);
    out.estimand.outcome = outcome_from_json(need(estimand, "outcome", ctx), ctx);
    out.estimand.horizon = horizon_class_from_json(need(estimand, "horizon", ctx), ctx);
    const json& measure = need(estimand, "measure", ctx);
    out.estimand.measure.m_family =
        parse_enum<MeasureFamily>(measure, "family", parse_measure_family, ctx);
    out.estimand.measure.m_type = need(measure, "type", ctx).get<std::string>();
    out.estimand.measure.s_canon =
        parse_enum<CanonScale>(measure, "canonical_scale", parse_canon_scale, ctx);

    out.theta_canon = need(j, "theta_canon", ctx).get<double>();
    if (auto it = j.find("ci_canon"); it != j.end() && !it->is_null())
        out.ci_canon = interval_from_json(*it, ctx + ".ci_canon");

    const json& alpha = need(j, "alpha", ctx);
    out.alpha.signature = signature_from_json(need(alpha, "signature", ctx), ctx);
    {
        auto rule = parse_rule(need(alpha, "rule", ctx).get<std::string>());
        if (!rule) throw ParseError(ctx + ": unknown rule token");
        out.alpha.rule_applied = *rule;
    }
    out.alpha.discarded_rules = rules_from_json(need(alpha, "discarded_rules", ctx), ctx);
    out.alpha.uncertainty = uncertainty_from_json(need(alpha, "uncertainty", ctx), ctx);
    out.alpha.validity_flags =
        need(alpha, "validity_flags", ctx).get<std::vector<std::string>>();
    out.alpha.alignment =
        alignment_record_from_json(need(alpha, "alignment", ctx), ctx + ".alignment");

    out.provenance = provenance_from_json(need(j, "provenance", ctx), ctx);
    return out;
}

json bucket_key_to_json(const BucketKey& v) {
    json j;
    j["encoded"] = v.encode();
    j["p_bucket"] = v.p_bucket;
    j["x"] = v.x_id;
    j["y"] = v.y_id;
    j["tau"] = v.tau_class.encode();
    j["contrast_type"] = to_string(v.c_type);
    j["family"] = to_string(v.m_family);
    put_opt(j, "tau_raw_override", v.tau_raw_override);
    if (v.drop_c_type) j["drop_c_type"] = true;
    if (!v.extra.empty()) j["extra"] = v.extra;
    return j;
}

BucketKey bucket_key_from_json(const json& j, const std::string& ctx) {
    BucketKey out;
    out.p_bucket = need(j, "p_bucket", ctx).get<std::string>();
    out.x_id = need(j, "x", ctx).get<std::string>();
    out.y_id = need(j, "y", ctx).get<std::string>();
    out.tau_class = horizon_class_from_json(need(j, "tau", ctx), ctx);
    out.c_type = parse_enum<ContrastType>(j, "contrast_type", parse_contrast_type, ctx);
    out.m_family = parse_enum<MeasureFamily>(j, "family", parse_measure_family, ctx);
    get_opt(j, "tau_raw_override", out.tau_raw_override);
    if (auto it = j.find("drop_c_type"); it != j.end()) out.drop_c_type = it->get<bool>();
    if (auto it = j.find("extra"); it != j.end())
        out.extra = it->get<std::vector<std::string>>();
    return out;
}

json conflict_to_json(const ConflictAnnotation& v) {
    json types = json::array();
    for (ConflictType t : v.types) types.push_back(std::string(to_string(t)));
    json witnesses = json::array();
    for (const auto& w : v.witnesses)
        witnesses.push_back(json{{"type", to_string(w.type)},
                                 {"claims", w.claim_refs},
                                 {"statistic", w.statistic}});
    json j;
    j["types"] = std::move(types);
    j["severity"] = to_string(v.severity);
    j["witnesses"] = std::move(witnesses);
    return j;
}

ConflictAnnotation conflict_from_json(const json& j, const std::string& ctx) {
    ConflictAnnotation out;
    for (const auto& item : need(j, "types", ctx)) {
        auto t = parse_conflict_type(item.get<std::string>());
        if (!t) throw ParseError(ctx + ": unknown conflict type");
        out.types.push_back(*t);
    }
    {
        auto s = parse_severity(need(j, "severity", ctx).get<std::string>());
        if (!s) throw ParseError(ctx + ": unknown severity");
        out.severity = *s;
    }
    for (const auto& item : need(j, "witnesses", ctx)) {
        ConflictWitness w;
        auto t = parse_conflict_type(need(item, "type", ctx).get<std::string>());
        if (!t) throw ParseError(ctx + ": unknown conflict type");
        w.type = *t;
        w.claim_refs = need(item, "claims", ctx).get<std::vector<std::string>>();
        w.statistic = need(item, "statistic", ctx).get<double>();
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

json quality_breakdown_to_json(const QualityBreakdown& v) {
    json j;
    j["g"] = v.components.g;
    j["n"] = v.components.n;
    j["p"] = v.components.p;
    j["a"] = v.components.a;
    j["q"] = v.q;
    j["ref"] = v.ref;
    j["card_id"] = v.card_id;
    j["effect_index"] = v.effect_index;
    return j;
}

QualityBreakdown quality_breakdown_from_json(const json& j, const std::string& ctx) {
    QualityBreakdown out;
    out.components.g = need(j, "g", ctx).get<double>();
    out.components.n = need(j, "n", ctx).get<double>();
    out.components.p = need(j, "p", ctx).get<double>();
    out.components.a = need(j, "a", ctx).get<double>();
    out.q = need(j, "q", ctx).get<double>();
    out.ref = need(j, "ref", ctx).get<std::string>();
    out.card_id = need(j, "card_id", ctx).get<std::string>();
    out.effect_index = need(j, "effect_index", ctx).get<int>();
    return out;
}

json build_config_to_json_obj(const BuildConfig& v) {
    json alignment;
    alignment["units"] = v.alignment.unit_to_days;
    alignment["bin_upper_edges"] = v.alignment.bin_upper_edges;
    alignment["representatives"] = v.alignment.representatives;
    alignment["rho"] = v.alignment.rho;
    alignment["delta_acute"] = v.alignment.delta_acute;

    json heterogeneity;
    heterogeneity["delta_het"] = v.heterogeneity.delta_het;
    heterogeneity["weight_rule"] = to_string(v.heterogeneity.weight_rule);

    json quality;
    quality["grade_map"] = json{{"A", v.quality.grade_a},
                                {"B", v.quality.grade_b},
                                {"C", v.quality.grade_c}};
    quality["adjustment_map"] = json{{"none", v.quality.adj_none},
                                     {"basic", v.quality.adj_basic},
                                     {"rich", v.quality.adj_rich}};
    quality["n_max"] = v.quality.n_max;
    quality["w_ref"] = v.quality.w_ref;
    quality["weights"] = json{{"g", v.quality.w_g},
                              {"n", v.quality.w_n},
                              {"p", v.quality.w_p},
                              {"a", v.quality.w_a}};

    json measures;
    for (const auto& [type, info] : v.measures.types())
        measures[type] = json{{"family", to_string(info.family)},
                              {"bound_to_canonical", info.bound_to_canonical}};

    json j;
    j["coverage"] = v.coverage;
    j["ablation"] = to_string(v.ablation);
    j["alignment"] = std::move(alignment);
    j["heterogeneity"] = std::move(heterogeneity);
    j["quality"] = std::move(quality);
    j["measure_types"] = std::move(measures);
    return j;
}

BuildConfig build_config_from_json_obj(const json& j) {
    const std::string ctx = "config";
    BuildConfig out;

    if (auto it = j.find("coverage"); it != j.end()) out.coverage = it->get<double>();
    if (auto it = j.find("ablation"); it != j.end()) {
        auto mode = parse_ablation_mode(it->get<std::string>());
        if (!mode) throw ParseError("config: unknown ablation mode");
        out.ablation = *mode;
    }

    if (auto it = j.find("alignment"); it != j.end()) {
        const json& a = *it;
        out.alignment.unit_to_days =
            need(a, "units", ctx).get<std::map<std::string, double>>();
        out.alignment.bin_upper_edges =
            need(a, "bin_upper_edges", ctx).get<std::vector<double>>();
        out.alignment.representatives =
            need(a, "representatives", ctx).get<std::vector<double>>();
        out.alignment.rho = need(a, "rho", ctx).get<double>();
        out.alignment.delta_acute = need(a, "delta_acute", ctx).get<double>();
    }

    if (auto it = j.find("heterogeneity"); it != j.end()) {
        out.heterogeneity.delta_het = need(*it, "delta_het", ctx).get<double>();
        auto rule = parse_weight_rule(need(*it, "weight_rule", ctx).get<std::string>());
        if (!rule) throw ParseError("config: unknown weight rule");
        out.heterogeneity.weight_rule = *rule;
    }

    if (auto it = j.find("quality"); it != j.end()) {
        const json& q = *it;
        const json& grades = need(q, "grade_map", ctx);
        out.quality.grade_a = need(grades, "A", ctx).get<double>();
        out.quality.grade_b = need(grades, "B", ctx).get<double>();
        out.quality.grade_c = need(grades, "C", ctx).get<double>();
        const json& adjustments = need(q, "adjustment_map", ctx);
        out.quality.adj_none = need(adjustments, "none", ctx).get<double>();
        out.quality.adj_basic = need(adjustments, "basic", ctx).get<double>();
        out.quality.adj_rich = need(adjustments, "rich", ctx).get<double>();
        out.quality.n_max = need(q, "n_max", ctx).get<std::int64_t>();
        out.quality.w_ref = need(q, "w_ref", ctx).get<double>();
        const json& weights = need(q, "weights", ctx);
        out.quality.w_g = need(weights, "g", ctx).get<double>();
        out.quality.w_n = need(weights, "n", ctx).get<double>();
        out.quality.w_p = need(weights, "p", ctx).get<double>();
        out.quality.w_a = need(weights, "a", ctx).get<double>();
    }

    if (auto it = j.find("measure_types"); it != j.end()) {
        MeasureRegistry registry;
        for (const auto& [type, info] : it->items()) {
            MeasureTypeInfo entry;
            entry.family =
                parse_enum<MeasureFamily>(info, "family", parse_measure_family, ctx);
            entry.bound_to_canonical = need(info, "bound_to_canonical", ctx).get<bool>();
            registry.add(type, entry);
        }
        out.measures = std::move(registry);
    }

    out.validate();
    return out;
}

json atlas_to_json_obj(const Atlas& v) {
    json edges = json::array();
    for (const auto& edge : v.edges) {
        json e;
        e["key"] = bucket_key_to_json(edge.key);
        json claims = json::array();
        for (const auto& claim : edge.claims) claims.push_back(canonical_claim_to_json(claim));
        e["claims"] = std::move(claims);
        e["conflict"] = conflict_to_json(edge.conflict);
        e["default_index"] = edge.default_index;
        e["poolable_indices"] = edge.poolable_indices;
        json quality = json::array();
        for (const auto& q : edge.quality) quality.push_back(quality_breakdown_to_json(q));
        e["quality"] = std::move(quality);
        edges.push_back(std::move(e));
    }

    json rejected = json::array();
    for (const auto& r : v.report.rejected)
        rejected.push_back(json{{"card_id", r.card_id},
                                {"effect_index", r.effect_index},
                                {"reason", r.reason}});

    json j;
    j["schema"] = "evidence-atlas/1";
    j["build_config"] = build_config_to_json_obj(v.config);
    j["build_digest"] = v.build_digest;
    j["report"] = json{{"cards", v.report.cards},
                       {"claims_seen", v.report.claims_seen},
                       {"claims_compiled", v.report.claims_compiled},
                       {"rejected", std::move(rejected)}};
    j["edges"] = std::move(edges);
    return j;
}

Atlas atlas_from_json_obj(const json& j) {
    const std::string ctx = "atlas";
    if (need(j, "schema", ctx).get<std::string>() != "evidence-atlas/1")
        throw ParseError("atlas: unsupported schema tag");

    Atlas out;
    out.config = build_config_from_json_obj(need(j, "build_config", ctx));
    out.build_digest = need(j, "build_digest", ctx).get<std::string>();

    const json& report = need(j, "report", ctx);
    out.report.cards = need(report, "cards", ctx).get<std::size_t>();
    out.report.claims_seen = need(report, "claims_seen", ctx).get<std::size_t>();
    out.report.claims_compiled = need(report, "claims_compiled", ctx).get<std::size_t>();
    for (const auto& item : need(report, "rejected", ctx))
        out.report.rejected.push_back(RejectedClaim{
            need(item, "card_id", ctx).get<std::string>(),
            need(item, "effect_index", ctx).get<int>(),
            need(item, "reason", ctx).get<std::string>()});

    for (const auto& item : need(j, "edges", ctx)) {
        AtlasEdge edge;
        edge.key = bucket_key_from_json(need(item, "key", ctx), ctx + ".key");
        for (const auto& claim : need(item, "claims", ctx))
            edge.claims.push_back(canonical_claim_from_json(claim, ctx + ".claim"));
        edge.conflict = conflict_from_json(need(item, "conflict", ctx), ctx + ".conflict");
        edge.default_index = need(item, "default_index", ctx).get<std::size_t>();
        edge.poolable_indices =
            need(item, "poolable_indices", ctx).get<std::vector<std::size_t>>();
        for (const auto& q : need(item, "quality", ctx))
            edge.quality.push_back(quality_breakdown_from_json(q, ctx + ".quality"));
        if (edge.claims.empty() || edge.default_index >= edge.claims.size() ||
            edge.quality.size() != edge.claims.size())
            throw ParseError("atlas: edge payload is inconsistent");
        out.edges.push_back(std::move(edge));
    }
    return out;
}

json answer_to_json_obj(const AnswerObject& v) {
    json j;
    if (v.estimand) {
        json estimand;
        estimand["population"] = population_to_json(v.estimand->population);
        estimand["contrast"] = contrast_to_json(v.estimand->contrast);
        estimand["outcome"] = outcome_to_json(v.estimand->outcome);
        estimand["horizon"] = v.estimand->horizon.encode();
        estimand["measure"] = json{{"family", to_string(v.estimand->measure.m_family)},
                                   {"type", v.estimand->measure.m_type},
                                   {"canonical_scale", to_string(v.estimand->measure.s_canon)}};
        j["estimand"] = std::move(estimand);
    }
    put_opt(j, "theta_hat", v.theta_hat);
    if (v.ci) j["ci"] = interval_to_json(*v.ci);
    if (v.provenance) j["provenance"] = provenance_to_json(*v.provenance);
    if (v.conflict) j["conflict"] = conflict_to_json(*v.conflict);

    // Flags as sorted tokens: set ordering is enum order, so collect + sort.
    std::vector<std::string> flags;
    flags.reserve(v.flags.size());
    for (Flag f : v.flags) flags.emplace_back(to_string(f));
    std::sort(flags.begin(), flags.end());
    j["flags"] = std::move(flags);

    json witnesses = json::array();
    for (const auto& key : v.witness_keys) witnesses.push_back(key.encode());
    j["witness_keys"] = std::move(witnesses);
    return j;
}

} // namespace evatlas::serde
