#include "evatlas/card.hpp"

#include "evatlas/errors.hpp"
#include "serde.hpp"

#include <fstream>
#include <sstream>

namespace evatlas {

using serde::json;

namespace {

// Known top-level card keys; everything else is preserved in `extra`.
constexpr const char* kKnownKeys[] = {"card_id", "paper", "grade", "design", "effects"};

bool known_key(const std::string& key) {
    for (const char* k : kKnownKeys)
        if (key == k) return true;
    return false;
}

struct FieldReader {
    const json& j;
    std::string prefix;
    std::vector<Violation>& violations;
    bool ok = true;

    const json* get(const char* key) {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const json* require(const char* key) {
        const json* field = get(key);
        if (field == nullptr) {
            violations.push_back({prefix + key, "required field is missing"});
            ok = false;
        }
        return field;
    }

    std::optional<std::string> require_string(const char* key) {
        const json* field = require(key);
        if (field == nullptr) return std::nullopt;
        if (!field->is_string()) {
            violations.push_back({prefix + key, "must be a string"});
            ok = false;
            return std::nullopt;
        }
        return field->get<std::string>();
    }

    std::optional<double> require_number(const char* key) {
        const json* field = require(key);
        if (field == nullptr) return std::nullopt;
        if (!field->is_number()) {
            violations.push_back({prefix + key, "must be a number"});
            ok = false;
            return std::nullopt;
        }
        return field->get<double>();
    }

    std::optional<std::string> optional_string(const char* key) {
        const json* field = get(key);
        if (field == nullptr) return std::nullopt;
        if (!field->is_string()) {
            violations.push_back({prefix + key, "must be a string"});
            ok = false;
            return std::nullopt;
        }
        return field->get<std::string>();
    }

    std::optional<double> optional_number(const char* key) {
        const json* field = get(key);
        if (field == nullptr) return std::nullopt;
        if (!field->is_number()) {
            violations.push_back({prefix + key, "must be a number"});
            ok = false;
            return std::nullopt;
        }
        return field->get<double>();
    }

    template <class Enum, class Parse>
    std::optional<Enum> require_enum(const char* key, Parse parse, const char* what) {
        auto token = require_string(key);
        if (!token) return std::nullopt;
        auto value = parse(*token);
        if (!value) {
            violations.push_back({prefix + key, std::string("unknown ") + what + " token '" +
                                                    *token + "'"});
            ok = false;
            return std::nullopt;
        }
        return value;
    }
};

std::optional<RawHorizon> parse_time(const json& j, const std::string& prefix,
                                     std::vector<Violation>& violations) {
    FieldReader r{j, prefix, violations};
    auto kind = r.require_string("kind");
    if (!kind) return std::nullopt;

    if (*kind == "duration") {
        auto value = r.require_number("value");
        auto unit = r.require_string("unit");
        if (!r.ok) return std::nullopt;
        return RawHorizon{DurationHorizon{*value, *unit}};
    }
    if (*kind == "interval") {
        auto value = r.require_number("value");
        auto unit = r.require_string("unit");
        auto reference = r.require_string("reference");
        if (!r.ok) return std::nullopt;
        return RawHorizon{IntervalHorizon{*value, *unit, *reference}};
    }
    if (*kind == "tte") {
        auto event = r.require_string("event");
        if (!event) return std::nullopt;
        TteHorizon t;
        t.event = *event;
        if (const json* followup = r.get("followup")) {
            FieldReader fr{*followup, prefix + "followup.", violations};
            auto value = fr.require_number("value");
            auto unit = fr.require_string("unit");
            if (!fr.ok) return std::nullopt;
            t.followup = DurationHorizon{*value, *unit};
        }
        return RawHorizon{t};
    }
    if (*kind == "missing") {
        auto reason = r.require_string("reason");
        if (!reason) return std::nullopt;
        return RawHorizon{MissingHorizon{*reason}};
    }
    violations.push_back({prefix + "kind", "unknown time kind '" + *kind + "'"});
    return std::nullopt;
}

std::optional<EffectEntry> parse_effect(const json& j, int position,
                                        std::vector<Violation>& violations) {
    const std::string prefix = "effects[" + std::to_string(position) + "].";
    if (!j.is_object()) {
        violations.push_back({prefix.substr(0, prefix.size() - 1), "must be an object"});
        return std::nullopt;
    }

    EffectEntry effect;
    bool ok = true;

    {
        FieldReader r{j, prefix, violations};
        if (auto idx = r.optional_number("effect_index"))
            effect.effect_index = static_cast<int>(*idx);
        else
            effect.effect_index = position;
    }

    if (const json* population = j.contains("population") ? &j["population"] : nullptr;
        population != nullptr && population->is_object()) {
        FieldReader r{*population, prefix + "population.", violations};
        if (auto bucket = r.require_string("bucket"))
            effect.population.p_bucket = normalize_token(*bucket);
        if (const json* setting = r.get("setting")) {
            if (setting->is_object())
                effect.population.p_setting =
                    setting->get<std::map<std::string, std::string>>();
            else {
                violations.push_back({prefix + "population.setting", "must be an object"});
                r.ok = false;
            }
        }
        ok = ok && r.ok;
    } else {
        violations.push_back({prefix + "population", "required object is missing"});
        ok = false;
    }

    if (const json* intervention = j.contains("intervention") ? &j["intervention"] : nullptr;
        intervention != nullptr && intervention->is_object()) {
        FieldReader r{*intervention, prefix + "intervention.", violations};
        if (auto id = r.require_string("id"))
            effect.intervention.intervention_id = normalize_token(*id);
        if (auto c_type = r.require_enum<ContrastType>("contrast_type", parse_contrast_type,
                                                       "contrast type"))
            effect.intervention.c_type = *c_type;
        effect.intervention.delta = r.optional_number("delta");
        effect.intervention.unit = r.optional_string("unit");
        effect.intervention.x0 = r.optional_string("x0");
        effect.intervention.x1 = r.optional_string("x1");
        ok = ok && r.ok;
    } else {
        violations.push_back({prefix + "intervention", "required object is missing"});
        ok = false;
    }

    if (const json* outcome = j.contains("outcome") ? &j["outcome"] : nullptr;
        outcome != nullptr && outcome->is_object()) {
        FieldReader r{*outcome, prefix + "outcome.", violations};
        if (auto id = r.require_string("id"))
            effect.outcome.outcome_id = normalize_token(*id);
        if (auto type = r.require_enum<OutcomeType>("type", parse_outcome_type, "outcome type"))
            effect.outcome.outcome_type = *type;
        effect.outcome.unit = r.optional_string("unit");
        effect.outcome.notes = r.optional_string("notes");
        ok = ok && r.ok;
    } else {
        violations.push_back({prefix + "outcome", "required object is missing"});
        ok = false;
    }

    if (const json* time = j.contains("time") ? &j["time"] : nullptr;
        time != nullptr && time->is_object()) {
        if (auto horizon = parse_time(*time, prefix + "time.", violations))
            effect.time = *horizon;
        else
            ok = false;
    } else {
        violations.push_back({prefix + "time", "required object is missing"});
        ok = false;
    }

    if (const json* measure = j.contains("measure") ? &j["measure"] : nullptr;
        measure != nullptr && measure->is_object()) {
        FieldReader r{*measure, prefix + "measure.", violations};
        if (auto type = r.require_string("type")) effect.measure.m_type = *type;
        if (auto scale = r.require_enum<ReportedScale>("reported_scale", parse_reported_scale,
                                                       "reported scale"))
            effect.measure.reported_scale = *scale;
        if (const json* family = r.get("family")) {
            if (family->is_string() && parse_measure_family(family->get<std::string>()))
                effect.measure.m_family = *parse_measure_family(family->get<std::string>());
            else {
                violations.push_back({prefix + "measure.family", "unknown family token"});
                r.ok = false;
            }
        } else {
            // Family defaults from the built-in vocabulary when omitted.
            if (const auto* info = MeasureRegistry::defaults().find(effect.measure.m_type))
                effect.measure.m_family = info->family;
            else {
                violations.push_back(
                    {prefix + "measure.type", "measure type not in configured vocabulary"});
                r.ok = false;
            }
        }
        ok = ok && r.ok;
    } else {
        violations.push_back({prefix + "measure", "required object is missing"});
        ok = false;
    }

    if (const json* estimate = j.contains("estimate") ? &j["estimate"] : nullptr;
        estimate != nullptr && estimate->is_object()) {
        FieldReader r{*estimate, prefix + "estimate.", violations};
        if (auto point = r.require_number("point")) effect.estimate.theta = *point;
        if (const json* ci = r.get("ci")) {
            if (ci->is_array() && ci->size() == 2 && (*ci)[0].is_number() &&
                (*ci)[1].is_number())
                effect.estimate.ci = Interval{(*ci)[0].get<double>(), (*ci)[1].get<double>()};
            else {
                violations.push_back({prefix + "estimate.ci", "must be a two-number array"});
                r.ok = false;
            }
        }
        effect.estimate.se = r.optional_number("se");
        effect.estimate.p_value = r.optional_number("p");
        ok = ok && r.ok;
    } else {
        violations.push_back({prefix + "estimate", "required object is missing"});
        ok = false;
    }

    if (!ok) return std::nullopt;
    return effect;
}

EvidenceObject lower_effect(const EvidenceCardFile& card, const EffectEntry& effect) {
    EvidenceObject object;
    object.estimand.population = effect.population;
    object.estimand.contrast = effect.intervention;
    object.estimand.outcome = effect.outcome;
    object.estimand.horizon = effect.time;
    object.estimand.measure = effect.measure;
    object.claim = effect.estimate;

    object.provenance.ref = card.doi;
    object.provenance.grade = card.grade;
    object.provenance.n = card.n;
    object.provenance.adjustment = card.adjustment;
    object.provenance.card_id = card.card_id;
    object.provenance.effect_index = effect.effect_index;
    if (card.title) object.provenance.meta["paper.title"] = *card.title;
    if (card.year) object.provenance.meta["paper.year"] = std::to_string(*card.year);
    for (const auto& [key, value] : card.extra) object.provenance.meta[key] = value;
    return object;
}

} // namespace

ParsedCard parse_card_text(std::string_view text, std::string_view origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(origin) + ": JSON syntax error at byte " +
                         std::to_string(e.byte) + ": " + e.what());
    }

    ParsedCard out;
    if (!j.is_object()) {
        out.violations.push_back({"", "card document must be a JSON object"});
        return out;
    }

    bool card_ok = true;
    {
        FieldReader r{j, "", out.violations};
        if (auto id = r.require_string("card_id")) out.card.card_id = *id;
        if (auto grade = r.require_enum<Grade>("grade", parse_grade, "grade"))
            out.card.grade = *grade;
        card_ok = r.ok;
    }

    if (const json* paper = j.contains("paper") ? &j["paper"] : nullptr;
        paper != nullptr && paper->is_object()) {
        FieldReader r{*paper, "paper.", out.violations};
        if (auto doi = r.require_string("doi")) out.card.doi = *doi;
        out.card.title = r.optional_string("title");
        if (auto year = r.optional_number("year")) out.card.year = static_cast<int>(*year);
        card_ok = card_ok && r.ok;
    } else {
        out.violations.push_back({"paper", "required object is missing"});
        card_ok = false;
    }

    if (const json* design = j.contains("design") ? &j["design"] : nullptr;
        design != nullptr && design->is_object()) {
        FieldReader r{*design, "design.", out.violations};
        if (auto adjustment =
                r.require_enum<Adjustment>("adjustment", parse_adjustment, "adjustment"))
            out.card.adjustment = *adjustment;
        if (auto n = r.optional_number("n")) out.card.n = static_cast<std::int64_t>(*n);
        card_ok = card_ok && r.ok;
    } else {
        out.violations.push_back({"design", "required object is missing"});
        card_ok = false;
    }

    for (const auto& [key, value] : j.items())
        if (!known_key(key)) out.card.extra[key] = value.dump();

    const json* effects = j.contains("effects") ? &j["effects"] : nullptr;
    if (effects == nullptr || !effects->is_array()) {
        out.violations.push_back({"effects", "required array is missing"});
        return out;
    }
    out.effects_seen = static_cast<int>(effects->size());

    for (int i = 0; i < out.effects_seen; ++i) {
        auto effect = parse_effect((*effects)[static_cast<std::size_t>(i)], i, out.violations);
        if (effect) out.card.effects.push_back(std::move(*effect));
    }

    // Lowering needs a sound card header; effects without one cannot carry
    // provenance and stay un-lowered (their violations tell the story).
    if (card_ok)
        for (const auto& effect : out.card.effects)
            out.objects.push_back(lower_effect(out.card, effect));
    return out;
}

ParsedCard parse_card_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open card file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_card_text(buffer.str(), path.string());
}

std::string card_to_json(const EvidenceCardFile& card) {
    json j;
    j["card_id"] = card.card_id;

    json paper;
    paper["doi"] = card.doi;
    serde::put_opt(paper, "title", card.title);
    serde::put_opt(paper, "year", card.year);
    j["paper"] = std::move(paper);

    j["grade"] = to_string(card.grade);

    json design;
    serde::put_opt(design, "n", card.n);
    design["adjustment"] = to_string(card.adjustment);
    j["design"] = std::move(design);

    json effects = json::array();
    for (const auto& effect : card.effects) {
        json e;
        e["effect_index"] = effect.effect_index;
        e["population"] = serde::population_to_json(effect.population);
        e["intervention"] = serde::contrast_to_json(effect.intervention);
        e["outcome"] = serde::outcome_to_json(effect.outcome);
        e["time"] = serde::horizon_to_json(effect.time);
        e["measure"] = serde::measure_to_json(effect.measure);
        e["estimate"] = serde::claim_to_json(effect.estimate);
        effects.push_back(std::move(e));
    }
    j["effects"] = std::move(effects);

    for (const auto& [key, value] : card.extra) {
        if (known_key(key)) continue;
        j[key] = json::parse(value);
    }
    return j.dump(2) + "\n";
}

std::vector<EvidenceObject> lower_card(const EvidenceCardFile& card) {
    std::vector<EvidenceObject> out;
    out.reserve(card.effects.size());
    for (const auto& effect : card.effects) out.push_back(lower_effect(card, effect));
    return out;
}

EvidenceCardFile card_from_object(const EvidenceObject& object) {
    EvidenceCardFile card;
    card.card_id = object.provenance.card_id;
    card.doi = object.provenance.ref;
    card.grade = object.provenance.grade;
    card.n = object.provenance.n;
    card.adjustment = object.provenance.adjustment;
    if (auto it = object.provenance.meta.find("paper.title");
        it != object.provenance.meta.end())
        card.title = it->second;
    if (auto it = object.provenance.meta.find("paper.year"); it != object.provenance.meta.end())
        card.year = std::stoi(it->second);

    EffectEntry effect;
    effect.effect_index = object.provenance.effect_index;
    effect.population = object.estimand.population;
    effect.intervention = object.estimand.contrast;
    effect.outcome = object.estimand.outcome;
    effect.time = object.estimand.horizon;
    effect.measure = object.estimand.measure;
    effect.estimate = object.claim;
    card.effects.push_back(std::move(effect));
    return card;
}

} // namespace evatlas
