#pragma once

// External evidence-card format: one JSON document per study, a paper block,
// a grade, a design block and a list of effects. Parsing yields the typed
// card, the lowered claim objects, and a structured violation list; only JSON
// syntax errors throw. Unknown top-level keys are preserved verbatim and
// surface in provenance.meta.

#include "evatlas/evidence.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace evatlas {

struct EffectEntry {
    int effect_index = 0;
    PopulationSpec population;
    InterventionContrast intervention;
    OutcomeSpec outcome;
    RawHorizon time = MissingHorizon{"unspecified"};
    MeasureFunctional measure;
    ClaimObject estimate;

    bool operator==(const EffectEntry&) const = default;
};

struct EvidenceCardFile {
    std::string card_id;
    std::string doi;
    std::optional<std::string> title;
    std::optional<int> year;
    Grade grade = Grade::C;
    std::optional<std::int64_t> n;
    Adjustment adjustment = Adjustment::None;
    std::vector<EffectEntry> effects;
    // Unknown top-level keys, value kept as compact JSON text.
    std::map<std::string, std::string> extra;

    bool operator==(const EvidenceCardFile&) const = default;
};

struct ParsedCard {
    EvidenceCardFile card;
    std::vector<EvidenceObject> objects;  // successfully lowered effects
    std::vector<Violation> violations;    // schema problems, field-addressed
    int effects_seen = 0;                 // includes effects that failed to parse
};

// Throws ParseError on JSON syntax errors (message carries origin and byte
// offset); schema problems land in the violation list instead.
ParsedCard parse_card_text(std::string_view text, std::string_view origin = "card");
ParsedCard parse_card_file(const std::filesystem::path& path);

// Canonical serialization; parse(card_to_json(c)) reproduces c byte-stably.
std::string card_to_json(const EvidenceCardFile& card);

// Claim objects for each effect of an already-typed card.
std::vector<EvidenceObject> lower_card(const EvidenceCardFile& card);

// Render a claim object back into a single-effect card (used by the fixture
// writer and the round-trip checks).
EvidenceCardFile card_from_object(const EvidenceObject& object);

} // namespace evatlas
