#include "evatlas/evidence.hpp"

#include <cctype>

namespace evatlas {

std::string normalize_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_gap = false;  // saw whitespace after at least one kept char
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pending_gap = true;
            continue;
        }
        if (pending_gap) {
            out.push_back('-');
            pending_gap = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string_view to_string(ContrastType v) {
    switch (v) {
        case ContrastType::PerUnit: return "per_unit";
        case ContrastType::Binary: return "binary";
        case ContrastType::ArmVsControl: return "arm_vs_control";
        case ContrastType::Categorical: return "categorical";
    }
    return "?";
}

std::string_view to_string(OutcomeType v) {
    switch (v) {
        case OutcomeType::Continuous: return "continuous";
        case OutcomeType::Binary: return "binary";
        case OutcomeType::TimeToEvent: return "time_to_event";
    }
    return "?";
}

std::string_view to_string(MeasureFamily v) {
    return v == MeasureFamily::Ratio ? "ratio" : "difference";
}

std::string_view to_string(ReportedScale v) {
    switch (v) {
        case ReportedScale::Ratio: return "ratio";
        case ReportedScale::LogRatio: return "log_ratio";
        case ReportedScale::Difference: return "difference";
    }
    return "?";
}

std::string_view to_string(Grade v) {
    switch (v) {
        case Grade::A: return "A";
        case Grade::B: return "B";
        case Grade::C: return "C";
    }
    return "?";
}

std::string_view to_string(Adjustment v) {
    switch (v) {
        case Adjustment::None: return "none";
        case Adjustment::Basic: return "basic";
        case Adjustment::Rich: return "rich";
    }
    return "?";
}

std::optional<ContrastType> parse_contrast_type(std::string_view token) {
    if (token == "per_unit") return ContrastType::PerUnit;
    if (token == "binary") return ContrastType::Binary;
    if (token == "arm_vs_control") return ContrastType::ArmVsControl;
    if (token == "categorical") return ContrastType::Categorical;
    return std::nullopt;
}

std::optional<OutcomeType> parse_outcome_type(std::string_view token) {
    if (token == "continuous") return OutcomeType::Continuous;
    if (token == "binary") return OutcomeType::Binary;
    if (token == "time_to_event") return OutcomeType::TimeToEvent;
    return std::nullopt;
}

std::optional<MeasureFamily> parse_measure_family(std::string_view token) {
    if (token == "ratio") return MeasureFamily::Ratio;
    if (token == "difference") return MeasureFamily::Difference;
    return std::nullopt;
}

std::optional<ReportedScale> parse_reported_scale(std::string_view token) {
    if (token == "ratio") return ReportedScale::Ratio;
    if (token == "log_ratio") return ReportedScale::LogRatio;
    if (token == "difference") return ReportedScale::Difference;
    return std::nullopt;
}

std::optional<Grade> parse_grade(std::string_view token) {
    if (token == "A") return Grade::A;
    if (token == "B") return Grade::B;
    if (token == "C") return Grade::C;
    return std::nullopt;
}

std::optional<Adjustment> parse_adjustment(std::string_view token) {
    if (token == "none") return Adjustment::None;
    if (token == "basic") return Adjustment::Basic;
    if (token == "rich") return Adjustment::Rich;
    return std::nullopt;
}

std::string claim_ref(const Provenance& p) {
    return p.card_id + "#" + std::to_string(p.effect_index);
}

const MeasureRegistry& MeasureRegistry::defaults() {
    static const MeasureRegistry reg = [] {
        MeasureRegistry r;
        r.add("HR", {MeasureFamily::Ratio, false});
        r.add("RR", {MeasureFamily::Ratio, false});
        r.add("OR", {MeasureFamily::Ratio, false});
        r.add("coef_cox", {MeasureFamily::Ratio, true});
        r.add("coef_logistic", {MeasureFamily::Ratio, true});
        r.add("MD", {MeasureFamily::Difference, false});
        r.add("RD", {MeasureFamily::Difference, false});
        r.add("coef_linear", {MeasureFamily::Difference, true});
        return r;
    }();
    return reg;
}

void MeasureRegistry::add(std::string m_type, MeasureTypeInfo info) {
    types_[std::move(m_type)] = info;
}

const MeasureTypeInfo* MeasureRegistry::find(std::string_view m_type) const {
    auto it = types_.find(std::string(m_type));
    return it == types_.end() ? nullptr : &it->second;
}

namespace {

bool is_normalized(const std::string& s) {
    return !s.empty() && s == normalize_token(s);
}

void check_duration_fields(const DurationHorizon& d, const char* prefix,
                           std::vector<Violation>& out) {
    if (d.value < 0.0)
        out.push_back({std::string(prefix) + ".value", "duration value must be >= 0"});
    if (d.unit.empty())
        out.push_back({std::string(prefix) + ".unit", "duration requires an explicit unit"});
}

} // namespace

std::vector<Violation> validate_evidence_object(const EvidenceObject& object,
                                                const MeasureRegistry& registry) {
    std::vector<Violation> out;
    const auto& e = object.estimand;
    const auto& c = object.claim;

    if (!is_normalized(e.population.p_bucket))
        out.push_back({"population.p_bucket", "population bucket must be a non-empty normalized token"});
    if (!is_normalized(e.contrast.intervention_id))
        out.push_back({"intervention.id", "intervention id must be a non-empty normalized token"});
    if (!is_normalized(e.outcome.outcome_id))
        out.push_back({"outcome.id", "outcome id must be a non-empty normalized token"});

    switch (e.contrast.c_type) {
        case ContrastType::PerUnit:
            if (!e.contrast.delta)
                out.push_back({"intervention.delta", "per_unit requires delta"});
            if (!e.contrast.unit || e.contrast.unit->empty())
                out.push_back({"intervention.unit", "per_unit requires unit"});
            break;
        case ContrastType::Binary:
        case ContrastType::ArmVsControl:
        case ContrastType::Categorical:
            if (!e.contrast.x0 || e.contrast.x0->empty())
                out.push_back({"intervention.x0", "level contrast requires x0"});
            if (!e.contrast.x1 || e.contrast.x1->empty())
                out.push_back({"intervention.x1", "level contrast requires x1"});
            break;
    }

    if (const auto* d = std::get_if<DurationHorizon>(&e.horizon)) {
        check_duration_fields(*d, "time", out);
    } else if (const auto* iv = std::get_if<IntervalHorizon>(&e.horizon)) {
        if (iv->length_value < 0.0)
            out.push_back({"time.value", "interval length must be >= 0"});
        if (iv->length_unit.empty())
            out.push_back({"time.unit", "interval requires an explicit unit"});
        if (iv->reference.empty())
            out.push_back({"time.reference", "interval requires a reference point"});
    } else if (const auto* t = std::get_if<TteHorizon>(&e.horizon)) {
        if (t->event.empty())
            out.push_back({"time.event", "time-to-event requires an event token"});
        if (t->followup) check_duration_fields(*t->followup, "time.followup", out);
    } else if (const auto* m = std::get_if<MissingHorizon>(&e.horizon)) {
        if (m->reason.empty())
            out.push_back({"time.reason", "missing horizon requires a reason"});
    }

    const auto& mf = e.measure;
    if (mf.m_type.empty()) {
        out.push_back({"measure.type", "measure type must be non-empty"});
    } else if (const auto* info = registry.find(mf.m_type); info == nullptr) {
        out.push_back({"measure.type", "measure type not in configured vocabulary"});
    } else if (info->family != mf.m_family) {
        out.push_back({"measure.family", "measure family contradicts the type vocabulary"});
    }
    if (mf.reported_scale == ReportedScale::Difference &&
        mf.m_family != MeasureFamily::Difference)
        out.push_back({"measure.reported_scale", "difference scale requires the difference family"});
    if (mf.reported_scale != ReportedScale::Difference &&
        mf.m_family == MeasureFamily::Difference)
        out.push_back({"measure.reported_scale", "difference family must report the difference scale"});

    if (c.ci && !(c.ci->lower <= c.ci->upper))
        out.push_back({"estimate.ci", "interval endpoints must satisfy lower <= upper"});
    if (mf.reported_scale == ReportedScale::Ratio) {
        if (!(c.theta > 0.0))
            out.push_back({"estimate.point", "theta must be > 0 on ratio scale"});
        if (c.ci && (!(c.ci->lower > 0.0) || !(c.ci->upper > 0.0)))
            out.push_back({"estimate.ci", "ratio-scale interval endpoints must be > 0"});
    }
    if (c.se && !(*c.se > 0.0))
        out.push_back({"estimate.se", "standard error must be > 0"});
    if (c.p_value && !(*c.p_value > 0.0 && *c.p_value < 1.0))
        out.push_back({"estimate.p", "p-value must lie strictly inside (0, 1)"});

    const auto& pv = object.provenance;
    if (pv.ref.empty())
        out.push_back({"paper.doi", "bibliographic reference must be non-empty"});
    if (pv.card_id.empty())
        out.push_back({"card_id", "card id must be non-empty"});
    if (pv.n && !(*pv.n > 0))
        out.push_back({"design.n", "sample size must be a positive integer"});
    if (pv.effect_index < 0)
        out.push_back({"effect_index", "effect index must be >= 0"});

    return out;
}

} // namespace evatlas
