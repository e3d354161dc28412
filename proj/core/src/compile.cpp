#include "evatlas/compile.hpp"

#include "evatlas/digest.hpp"
#include "evatlas/errors.hpp"
#include "serde.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <variant>

namespace evatlas {

namespace {

// "effects[3].estimate.point" -> 3; anything else is card-level (-1).
int violation_effect_index(const std::string& field) {
    constexpr std::string_view prefix = "effects[";
    if (field.rfind(prefix, 0) != 0) return -1;
    std::size_t pos = prefix.size();
    std::size_t end = field.find(']', pos);
    if (end == std::string::npos || end == pos) return -1;
    int index = 0;
    for (std::size_t i = pos; i < end; ++i) {
        char c = field[i];
        if (c < '0' || c > '9') return -1;
        index = index * 10 + (c - '0');
    }
    return index;
}

std::string join_violations(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.field.empty() ? v.rule : v.field + ": " + v.rule;
    }
    return out;
}

std::vector<CanonicalizeResult> run_canonicalize(const std::vector<EvidenceObject>& objects,
                                                 const BuildConfig& cfg, std::size_t jobs) {
    std::vector<CanonicalizeResult> out;
    out.reserve(objects.size());
    if (jobs <= 1 || objects.size() < 2) {
        for (const auto& object : objects) out.push_back(canonicalize(object, cfg));
        return out;
    }

    jobs = std::min(jobs, objects.size());
    const std::size_t chunk = (objects.size() + jobs - 1) / jobs;
    std::vector<std::future<std::vector<CanonicalizeResult>>> parts;
    for (std::size_t start = 0; start < objects.size(); start += chunk) {
        const std::size_t end = std::min(start + chunk, objects.size());
        parts.push_back(std::async(std::launch::async, [&objects, &cfg, start, end] {
            std::vector<CanonicalizeResult> part;
            part.reserve(end - start);
            for (std::size_t i = start; i < end; ++i)
                part.push_back(canonicalize(objects[i], cfg));
            return part;
        }));
    }
    // Merge in chunk order == input order, so jobs never affects output.
    for (auto& f : parts) {
        auto part = f.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

} // namespace

std::string corpus_digest(const std::vector<ParsedCard>& cards, const BuildConfig& cfg) {
    std::vector<const ParsedCard*> order;
    order.reserve(cards.size());
    for (const auto& c : cards) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const ParsedCard* a, const ParsedCard* b) {
        return a->card.card_id < b->card.card_id;
    });

    std::string blob = serde::build_config_to_json_obj(cfg).dump();
    blob += '\n';
    for (const ParsedCard* c : order) blob += card_to_json(c->card);
    return sha256_hex(blob);
}

Atlas compile_corpus(const std::vector<ParsedCard>& cards, const BuildConfig& cfg,
                     const CompileOptions& options) {
    cfg.validate();

    std::set<std::string> ids;
    for (const auto& card : cards) {
        const std::string& id = card.card.card_id;
        if (id.empty()) continue;  // unidentifiable cards surface via violations
        if (!ids.insert(id).second) throw CompileError("duplicate card id: " + id);
    }

    const std::string digest = corpus_digest(cards, cfg);

    BuildReport report;
    report.cards = cards.size();

    std::vector<EvidenceObject> pending;
    for (const auto& card : cards) {
        report.claims_seen += static_cast<std::size_t>(card.effects_seen);

        // Parse violations, grouped per effect (card-level problems under -1).
        std::map<int, std::vector<Violation>> grouped;
        for (const auto& v : card.violations)
            grouped[violation_effect_index(v.field)].push_back(v);
        for (const auto& [effect_index, violations] : grouped)
            report.rejected.push_back(
                {card.card.card_id, effect_index, join_violations(violations)});

        for (const auto& object : card.objects) {
            auto violations = validate_evidence_object(object, cfg.measures);
            if (!violations.empty())
                report.rejected.push_back({object.provenance.card_id,
                                           object.provenance.effect_index,
                                           join_violations(violations)});
            else
                pending.push_back(object);
        }
    }

    std::vector<CanonicalClaim> claims;
    claims.reserve(pending.size());
    for (auto& result : run_canonicalize(pending, cfg, options.jobs)) {
        if (auto* claim = std::get_if<CanonicalClaim>(&result))
            claims.push_back(std::move(*claim));
        else {
            const auto& rejection = std::get<ClaimRejection>(result);
            report.rejected.push_back(
                {rejection.card_id, rejection.effect_index, rejection.reason});
        }
    }
    report.claims_compiled = claims.size();

    const AblationMode mode = cfg.ablation;
    auto buckets = partition(std::move(claims), [mode](const CanonicalClaim& claim) {
        return bucket_key(claim, mode);
    });

    Atlas atlas = build_atlas(std::move(buckets), cfg, digest);
    atlas.report = std::move(report);
    return atlas;
}

} // namespace evatlas
