#include "evatlas/conflict.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <optional>
#include <vector>

using namespace evatlas;
using oracles::simple_canonical_claim;

namespace {

Bucket make_bucket(std::vector<CanonicalClaim> claims) {
    Bucket b;
    b.key = bucket_key(claims.front());
    b.claims = std::move(claims);
    return b;
}

const HeterogeneityConfig& het() {
    static const HeterogeneityConfig c;
    return c;
}

} // namespace

TEST_CASE("significant direction reads the interval sign") {
    CHECK(significant_direction(simple_canonical_claim("a", 0.3, Interval{0.1, 0.5}, 100)) == 1);
    CHECK(significant_direction(simple_canonical_claim("a", -0.3, Interval{-0.5, -0.1}, 100)) ==
          -1);
    CHECK(significant_direction(simple_canonical_claim("a", 0.3, Interval{-0.1, 0.5}, 100)) == 0);
    CHECK(significant_direction(simple_canonical_claim("a", 0.3, Interval{0.0, 0.5}, 100)) == 0);
    CHECK(significant_direction(simple_canonical_claim("a", 0.3, std::nullopt, 100)) == 0);
}

TEST_CASE("directional conflicts report the first decisive opposite pair") {
    const auto bucket = make_bucket({
        simple_canonical_claim("d-1", 0.3, Interval{0.1, 0.5}, 100),    // +
        simple_canonical_claim("d-2", 0.1, Interval{-0.2, 0.4}, 100),   // 0
        simple_canonical_claim("d-3", -0.3, Interval{-0.5, -0.1}, 100), // -
        simple_canonical_claim("d-4", -0.4, Interval{-0.6, -0.2}, 100), // -
    });
    const auto witness = detect_directional(bucket);
    REQUIRE(witness.has_value());
    CHECK(witness->type == ConflictType::Directional);
    CHECK(witness->claim_refs == std::vector<std::string>{"d-1#0", "d-3#0"});
    CHECK(witness->statistic == -1.0);

    CHECK_FALSE(detect_directional(make_bucket({
                                       simple_canonical_claim("d-1", 0.3, Interval{0.1, 0.5}, 100),
                                       simple_canonical_claim("d-2", 0.4, Interval{0.2, 0.6}, 100),
                                   }))
                    .has_value());
}

TEST_CASE("interval conflicts use closed endpoints and report the gap") {
    // Touching intervals still overlap.
    CHECK_FALSE(detect_interval(make_bucket({
                                    simple_canonical_claim("i-1", 0.5, Interval{0.0, 1.0}, 100),
                                    simple_canonical_claim("i-2", 1.5, Interval{1.0, 2.0}, 100),
                                }))
                    .has_value());

    const auto bucket = make_bucket({
        simple_canonical_claim("i-1", 0.5, Interval{0.0, 1.0}, 100),
        simple_canonical_claim("i-2", 2.5, Interval{2.0, 3.0}, 100),
        simple_canonical_claim("i-3", 5.5, Interval{5.0, 6.0}, 100),
    });
    const auto witness = detect_interval(bucket);
    REQUIRE(witness.has_value());
    CHECK(witness->claim_refs == std::vector<std::string>{"i-1#0", "i-2#0"});
    CHECK(witness->statistic == doctest::Approx(1.0).epsilon(1e-14));

    // The gap is orientation-independent.
    const auto reversed = detect_interval(make_bucket({
        simple_canonical_claim("i-1", 2.5, Interval{2.0, 3.0}, 100),
        simple_canonical_claim("i-2", 0.5, Interval{0.0, 0.8}, 100),
    }));
    REQUIRE(reversed.has_value());
    CHECK(reversed->statistic == doctest::Approx(1.2).epsilon(1e-14));

    // Claims without intervals cannot witness.
    CHECK_FALSE(detect_interval(make_bucket({
                                    simple_canonical_claim("i-1", 0.5, std::nullopt, 100),
                                    simple_canonical_claim("i-2", 9.5, Interval{9.0, 10.0}, 100),
                                }))
                    .has_value());
}

TEST_CASE("dispersion weights by sample size only when every member has one") {
    SUBCASE("sample-size weights") {
        const auto bucket = make_bucket({
            simple_canonical_claim("h-1", 0.0, std::nullopt, 7500),
            simple_canonical_claim("h-2", 0.4, std::nullopt, 2500),
        });
        const auto d = dispersion(bucket, het());
        CHECK(d.defined);
        CHECK(d.weights == std::vector<double>{0.75, 0.25});
        CHECK(d.value == doctest::Approx(0.03).epsilon(1e-13));
    }
    SUBCASE("uniform fallback when one n is missing") {
        const auto bucket = make_bucket({
            simple_canonical_claim("h-1", 0.0, std::nullopt, 7500),
            simple_canonical_claim("h-2", 0.4, std::nullopt, std::nullopt),
        });
        const auto d = dispersion(bucket, het());
        CHECK(d.weights == std::vector<double>{0.5, 0.5});
        CHECK(d.value == doctest::Approx(0.04).epsilon(1e-13));
    }
    SUBCASE("uniform rule ignores n entirely") {
        HeterogeneityConfig cfg;
        cfg.weight_rule = WeightRule::Uniform;
        const auto bucket = make_bucket({
            simple_canonical_claim("h-1", -0.5, std::nullopt, 10),
            simple_canonical_claim("h-2", 0.5, std::nullopt, 100000),
        });
        const auto d = dispersion(bucket, cfg);
        CHECK(d.weights == std::vector<double>{0.5, 0.5});
        CHECK(d.value == doctest::Approx(0.25).epsilon(1e-13));
    }
    SUBCASE("singleton buckets have no dispersion") {
        const auto bucket = make_bucket({simple_canonical_claim("h-1", 0.4, std::nullopt, 10)});
        CHECK_FALSE(dispersion(bucket, het()).defined);
    }
}

TEST_CASE("conflict annotation: types are ordered and severity follows the ladder") {
    // Directional + interval, dispersion below threshold: severity high.
    const auto split = make_bucket({
        simple_canonical_claim("s-1", 0.25, Interval{0.10, 0.40}, 2000),
        simple_canonical_claim("s-2", -0.25, Interval{-0.40, -0.10}, 5000),
    });
    auto annotation = detect_conflicts(split, het());
    CHECK(annotation.types ==
          std::vector<ConflictType>{ConflictType::Directional, ConflictType::Interval});
    CHECK(annotation.severity == Severity::High);
    REQUIRE(annotation.witnesses.size() == 2);
    CHECK(annotation.witnesses[0].statistic == -1.0);
    CHECK(annotation.witnesses[1].statistic == doctest::Approx(0.20).epsilon(1e-13));
    // Weighted dispersion stays below the threshold for this pair.
    CHECK(dispersion(split, het()).value ==
          doctest::Approx(0.051020408163265306).epsilon(1e-13));

    // Same direction, disjoint intervals: severity medium.
    const auto shifted = make_bucket({
        simple_canonical_claim("s-1", 0.15, Interval{0.10, 0.20}, 3000),
        simple_canonical_claim("s-2", 0.60, Interval{0.50, 0.70}, 800),
    });
    annotation = detect_conflicts(shifted, het());
    CHECK(annotation.types == std::vector<ConflictType>{ConflictType::Interval});
    CHECK(annotation.severity == Severity::Medium);
    CHECK(annotation.witnesses[0].statistic == doctest::Approx(0.30).epsilon(1e-13));
    CHECK(dispersion(shifted, het()).value ==
          doctest::Approx(0.033656509695290859).epsilon(1e-12));

    // Overlapping indecisive intervals but scattered points: severity low.
    const auto noisy = make_bucket({
        simple_canonical_claim("s-1", 0.5, Interval{-0.2, 1.2}, 1500),
        simple_canonical_claim("s-2", -0.5, Interval{-1.2, 0.2}, 1500),
    });
    annotation = detect_conflicts(noisy, het());
    CHECK(annotation.types == std::vector<ConflictType>{ConflictType::Heterogeneity});
    CHECK(annotation.severity == Severity::Low);
    REQUIRE(annotation.witnesses.size() == 1);
    CHECK(annotation.witnesses[0].claim_refs ==
          std::vector<std::string>{"s-1#0", "s-2#0"});
    CHECK(annotation.witnesses[0].statistic == doctest::Approx(0.25).epsilon(1e-13));

    // Agreement: no conflict at all.
    const auto agreeing = make_bucket({
        simple_canonical_claim("s-1", 0.30, Interval{0.10, 0.50}, 1000),
        simple_canonical_claim("s-2", 0.32, Interval{0.12, 0.52}, 1000),
    });
    annotation = detect_conflicts(agreeing, het());
    CHECK(annotation.types.empty());
    CHECK(annotation.severity == Severity::None);
    CHECK(annotation.witnesses.empty());
}

TEST_CASE("all three conflict types can coexist") {
    const auto bucket = make_bucket({
        simple_canonical_claim("t-1", 0.8, Interval{0.6, 1.0}, 1000),
        simple_canonical_claim("t-2", -0.8, Interval{-1.0, -0.6}, 1000),
    });
    const auto annotation = detect_conflicts(bucket, het());
    CHECK(annotation.types ==
          std::vector<ConflictType>{ConflictType::Directional, ConflictType::Interval,
                                    ConflictType::Heterogeneity});
    CHECK(annotation.severity == Severity::High);
    CHECK(annotation.witnesses.size() == 3);
    // Heterogeneity witnesses the whole bucket.
    CHECK(annotation.witnesses[2].claim_refs.size() == 2);
    CHECK(annotation.witnesses[2].statistic == doctest::Approx(0.64).epsilon(1e-13));
}

TEST_CASE("detection agrees with pairwise enumeration on random buckets") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 300; ++i) {
        const auto bucket = oracles::random_bucket(rng);
        const auto got = detect_conflicts(bucket, het());
        const auto want = oracles::brute_force_conflicts(bucket, het());
        CAPTURE(i);
        CHECK(oracles::conflicts_agree(got, want));
    }
}

TEST_CASE("token round trips for conflict vocabulary") {
    for (auto t : {ConflictType::Directional, ConflictType::Interval,
                   ConflictType::Heterogeneity})
        CHECK(parse_conflict_type(to_string(t)) == t);
    for (auto s : {Severity::None, Severity::Low, Severity::Medium, Severity::High})
        CHECK(parse_severity(to_string(s)) == s);
    CHECK_FALSE(parse_conflict_type("sideways").has_value());
    CHECK_FALSE(parse_severity("catastrophic").has_value());
}
