#pragma once

// Deterministic fixture corpus with ground truth known by construction: a set
// of hand-built scenario cards (one per behavior worth pinning down — merged
// worked-example bucket, each conflict type, each mediation/joint/counterfactual
// /subgroup/trajectory outcome) plus seeded filler singletons that vary
// numbers but never structure. The manifest freezes expected bucket counts
// (plain and per ablation), per-bucket annotations, and per-query verdicts.

#include "evatlas/card.hpp"
#include "evatlas/compile.hpp"
#include "evatlas/query.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace evatlas {

struct ExpectedAnswer {
    std::set<std::string> flags;  // flag tokens, exact set
    std::optional<double> theta;
    std::optional<Interval> ci;
};

struct FixtureQuery {
    std::string name;
    QuerySpec spec;
    // do/joint/cf/cate: one entry; med: total, direct, indirect; traj: one per
    // returned point, in order.
    std::vector<ExpectedAnswer> expect;
};

struct FixtureBucket {
    std::string key;  // encoded bucket key
    std::vector<std::string> claim_refs;
    std::vector<std::string> conflict_types;
    std::string severity;
    std::string default_ref;
    std::vector<std::string> poolable_refs;
};

struct FixtureCorpus {
    std::uint64_t seed = 0;
    BuildConfig config;
    std::vector<ParsedCard> cards;
    std::size_t bucket_count = 0;
    std::map<std::string, std::size_t> ablation_bucket_counts;  // mode token -> count
    std::vector<FixtureBucket> buckets;  // annotated subset, not exhaustive
    std::vector<FixtureQuery> queries;
};

// Seed varies the filler numbers only; tokens, bucket structure and every
// manifest expectation are seed-independent.
FixtureCorpus make_fixture_corpus(std::uint64_t seed);

std::string manifest_to_json(const FixtureCorpus& corpus);

// Writes cards/<card_id>.json, config.json and manifest.json under out_dir.
void emit_fixtures(std::uint64_t seed, const std::filesystem::path& out_dir);

} // namespace evatlas
