#include "evatlas/compile.hpp"
#include "evatlas/errors.hpp"
#include "evatlas/fixtures.hpp"
#include "evatlas/json_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

using namespace evatlas;

namespace {

const FixtureCorpus& corpus() {
    static const FixtureCorpus c = make_fixture_corpus(3);
    return c;
}

const Atlas& atlas() {
    static const Atlas a = compile_corpus(corpus().cards, corpus().config);
    return a;
}

} // namespace

TEST_CASE("edges are sorted by key encoding and find_edge retrieves them") {
    const auto& a = atlas();
    REQUIRE_FALSE(a.edges.empty());
    for (std::size_t i = 1; i < a.edges.size(); ++i)
        CHECK(a.edges[i - 1].key.encode() < a.edges[i].key.encode());

    for (const auto& edge : a.edges) {
        const AtlasEdge* found = a.find_edge(edge.key.encode());
        REQUIRE(found != nullptr);
        CHECK(found == &edge);
    }
    CHECK(a.find_edge("no|such|key|fixed:1|binary|ratio") == nullptr);
}

TEST_CASE("every edge carries aligned payloads and a coherent default") {
    for (const auto& edge : atlas().edges) {
        REQUIRE_FALSE(edge.claims.empty());
        CHECK(edge.quality.size() == edge.claims.size());
        CHECK(edge.default_index < edge.claims.size());
        REQUIRE_FALSE(edge.poolable_indices.empty());
        // The default kernel always belongs to the poolable subset.
        CHECK(std::count(edge.poolable_indices.begin(), edge.poolable_indices.end(),
                         edge.default_index) == 1);
        for (auto i : edge.poolable_indices) {
            CHECK(i < edge.claims.size());
            CHECK(edge.claims[i].estimand.measure.m_type ==
                  edge.default_kernel().estimand.measure.m_type);
        }
        // Every member claim matches the edge key.
        for (const auto& claim : edge.claims)
            CHECK(bucket_key(claim, atlas().config.ablation).encode() == edge.key.encode());
    }
}

TEST_CASE("atlas JSON round-trips byte-stably") {
    const std::string once = atlas_to_json(atlas());
    const Atlas back = atlas_from_json(once);
    CHECK(atlas_to_json(back) == once);

    CHECK(back.build_digest == atlas().build_digest);
    CHECK(back.config == atlas().config);
    REQUIRE(back.edges.size() == atlas().edges.size());
    for (std::size_t i = 0; i < back.edges.size(); ++i) {
        const auto& x = back.edges[i];
        const auto& y = atlas().edges[i];
        CHECK(x.key.encode() == y.key.encode());
        CHECK(x.claims == y.claims);
        CHECK(x.conflict == y.conflict);
        CHECK(x.default_index == y.default_index);
        CHECK(x.poolable_indices == y.poolable_indices);
        CHECK(x.quality == y.quality);
    }
    CHECK(back.report.cards == atlas().report.cards);
    CHECK(back.report.claims_seen == atlas().report.claims_seen);
    CHECK(back.report.claims_compiled == atlas().report.claims_compiled);
    CHECK(back.report.rejected == atlas().report.rejected);
}

TEST_CASE("build config JSON round-trips including non-default fields") {
    BuildConfig cfg = BuildConfig::defaults();
    cfg.coverage = 0.9;
    cfg.ablation = AblationMode::WeakKey;
    cfg.heterogeneity.delta_het = 0.25;
    cfg.heterogeneity.weight_rule = WeightRule::Uniform;
    cfg.quality.w_ref = 0.8;
    cfg.alignment.rho = 0.05;
    cfg.measures.add("SMD", {MeasureFamily::Difference, false});

    const std::string text = build_config_to_json(cfg);
    const BuildConfig back = build_config_from_json(text);
    CHECK(back == cfg);
    CHECK(build_config_to_json(back) == text);
}

TEST_CASE("corrupted atlas payloads raise parse errors") {
    CHECK_THROWS_AS(atlas_from_json("{ not json"), ParseError);
    CHECK_THROWS_AS(build_config_from_json("]["), ParseError);
}

TEST_CASE("atlas files save and load") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "evatlas-serde-test";
    fs::create_directories(dir);
    const fs::path path = dir / "atlas.json";

    save_atlas(atlas(), path);
    const Atlas loaded = load_atlas(path);
    CHECK(atlas_to_json(loaded) == atlas_to_json(atlas()));
    fs::remove_all(dir);
}

TEST_CASE("the build digest covers corpus and config but not input order") {
    auto cards = corpus().cards;
    const std::string digest = corpus_digest(cards, corpus().config);
    CHECK(digest.size() == 64);  // hex-encoded 256-bit hash
    CHECK(digest == atlas().build_digest);

    std::reverse(cards.begin(), cards.end());
    CHECK(corpus_digest(cards, corpus().config) == digest);

    BuildConfig other_cfg = corpus().config;
    other_cfg.coverage = 0.9;
    CHECK(corpus_digest(cards, other_cfg) != digest);

    auto tweaked = corpus().cards;
    tweaked.front().card.effects.front().estimate.theta += 1e-9;
    CHECK(corpus_digest(tweaked, corpus().config) != digest);
}

TEST_CASE("answers serialize with flags, numbers, and witness keys") {
    AnswerObject answer;
    answer.theta_hat = -0.25;
    answer.ci = Interval{-0.5, 0.0};
    answer.flags = {Flag::Executable, Flag::Heterogeneity};
    answer.witness_keys.push_back(atlas().edges.front().key);

    const std::string text = answer_to_json(answer);
    CHECK(text.find("\"executable\"") != std::string::npos);
    CHECK(text.find("\"heterogeneity\"") != std::string::npos);
    CHECK(text.find("-0.25") != std::string::npos);
    CHECK(text.find(atlas().edges.front().key.encode()) != std::string::npos);
}
