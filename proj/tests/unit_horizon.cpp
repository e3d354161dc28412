#include "evatlas/errors.hpp"
#include "evatlas/horizon.hpp"

#include <doctest.h>

#include <cmath>

using namespace evatlas;

namespace {
const AlignmentConfig& cfg() {
    static const AlignmentConfig c = AlignmentConfig::defaults();
    return c;
}
} // namespace

TEST_CASE("durations normalize through the unit table") {
    CHECK(*extract_duration(DurationHorizon{36.0, "hour"}, cfg()) == doctest::Approx(1.5));
    CHECK(*extract_duration(DurationHorizon{1.0, "day"}, cfg()) == 1.0);
    CHECK(*extract_duration(DurationHorizon{2.0, "week"}, cfg()) == 14.0);
    CHECK(*extract_duration(DurationHorizon{1.0, "month"}, cfg()) == 30.4375);
    CHECK(*extract_duration(DurationHorizon{1.0, "year"}, cfg()) == 365.25);
    CHECK(*extract_duration(IntervalHorizon{8.0, "week", "baseline"}, cfg()) == 56.0);
    CHECK(*extract_duration(TteHorizon{"mace", DurationHorizon{2.0, "year"}}, cfg()) == 730.5);
    CHECK_FALSE(extract_duration(TteHorizon{"mace", std::nullopt}, cfg()).has_value());
    CHECK_FALSE(extract_duration(MissingHorizon{"n/a"}, cfg()).has_value());
}

TEST_CASE("unknown unit tokens are hard errors") {
    CHECK_THROWS_AS(extract_duration(DurationHorizon{1.0, "fortnight"}, cfg()),
                    UnknownUnitError);
    CHECK_THROWS_AS(extract_duration(IntervalHorizon{1.0, "moon", "baseline"}, cfg()),
                    UnknownUnitError);
}

TEST_CASE("exact bin membership: closed upper edges, open tail") {
    CHECK(cfg().bin_count() == 9);
    CHECK(cfg().exact_bin(0.0) == 1);
    CHECK(cfg().exact_bin(2.0) == 1);
    CHECK(cfg().exact_bin(2.0000001) == 2);
    CHECK(cfg().exact_bin(14.0) == 2);
    CHECK(cfg().exact_bin(100.0) == 4);
    CHECK(cfg().exact_bin(2700.0) == 8);
    CHECK(cfg().exact_bin(5000.0) == 9);
}

TEST_CASE("fuzzy binning snaps to the nearest representative within tolerance") {
    // 52 weeks = 364 days: within 0.35% of the one-year representative.
    auto m = fuzzy_bin(364.0, cfg());
    CHECK(m.bin == 6);
    CHECK(m.fuzzy_used);
    CHECK(m.relative_diff == doctest::Approx(0.0034223134839151265).epsilon(1e-13));

    // 30 days: within 1.44% of the one-month representative.
    m = fuzzy_bin(30.0, cfg());
    CHECK(m.bin == 3);
    CHECK(m.fuzzy_used);
    CHECK(m.relative_diff == doctest::Approx(0.014373716632443531).epsilon(1e-13));

    // Representative hit: relative gap exactly zero.
    m = fuzzy_bin(84.0, cfg());
    CHECK(m.bin == 4);
    CHECK(m.fuzzy_used);
    CHECK(m.relative_diff == 0.0);

    // 100 days: no representative within 10%, falls back to membership.
    m = fuzzy_bin(100.0, cfg());
    CHECK(m.bin == 4);
    CHECK_FALSE(m.fuzzy_used);
}

TEST_CASE("fuzzy ties resolve to the smallest bin index") {
    AlignmentConfig c;
    c.unit_to_days = {{"day", 1.0}};
    c.bin_upper_edges = {4.0};
    c.representatives = {2.0, 6.0};
    c.rho = 0.5;
    c.delta_acute = 1.0;
    c.validate();

    // 3 is exactly 50% away from both representatives; the earlier bin wins.
    auto m = fuzzy_bin(3.0, c);
    CHECK(m.bin == 1);
    CHECK(m.fuzzy_used);
    CHECK(m.relative_diff == 0.5);
}

TEST_CASE("alignment classes: acute/fixed cutover and tte/unknown semantics") {
    auto cls = [&](const RawHorizon& h) { return align(h, cfg()).first; };

    CHECK(cls(DurationHorizon{3.0, "day"}).encode() == "acute:2");
    CHECK(cls(DurationHorizon{7.0, "day"}).encode() == "acute:2");
    CHECK(cls(DurationHorizon{8.0, "day"}).encode() == "fixed:2");
    CHECK(cls(DurationHorizon{6.0, "month"}).encode() == "fixed:5");
    CHECK(cls(IntervalHorizon{8.0, "week", "baseline"}).encode() == "fixed:4");
    CHECK(cls(TteHorizon{"mace", DurationHorizon{2.3, "year"}}).encode() == "tte:7");
    CHECK(cls(TteHorizon{"mace", std::nullopt}).encode() == "tte:-");
    CHECK(cls(MissingHorizon{"not reported"}).encode() == "unknown:-");
}

TEST_CASE("equivalent reporting horizons land in the same class") {
    auto cls = [&](const RawHorizon& h) { return align(h, cfg()).first; };

    const auto a = cls(DurationHorizon{12.0, "month"});
    const auto b = cls(DurationHorizon{1.0, "year"});
    const auto c = cls(DurationHorizon{52.0, "week"});
    CHECK(a == b);
    CHECK(b == c);
    CHECK(a.encode() == "fixed:6");

    CHECK(cls(DurationHorizon{30.0, "day"}) != cls(DurationHorizon{10.0, "year"}));
    CHECK(cls(DurationHorizon{30.0, "day"}).encode() == "fixed:3");
    CHECK(cls(DurationHorizon{10.0, "year"}).encode() == "fixed:9");
}

TEST_CASE("alignment records carry the evidence for the match") {
    auto [cls, rec] = align(DurationHorizon{52.0, "week"}, cfg());
    CHECK(cls.encode() == "fixed:6");
    CHECK(rec.extracted_days == 364.0);
    CHECK(rec.fuzzy_used);
    CHECK(*rec.matched_bin == 6);
    CHECK(*rec.relative_diff == doctest::Approx(0.0034223134839151265).epsilon(1e-13));
    CHECK(std::get<DurationHorizon>(rec.raw_horizon) == DurationHorizon{52.0, "week"});

    auto [mcls, mrec] = align(MissingHorizon{"n/a"}, cfg());
    CHECK(mcls == CanonicalHorizonClass{HorizonSem::Unknown, std::nullopt});
    CHECK_FALSE(mrec.extracted_days.has_value());
    CHECK_FALSE(mrec.matched_bin.has_value());
}

TEST_CASE("class encoding round-trips and rejects malformed text") {
    for (const char* text : {"fixed:6", "acute:1", "tte:7", "tte:-", "unknown:-"}) {
        auto decoded = CanonicalHorizonClass::decode(text);
        REQUIRE(decoded.has_value());
        CHECK(decoded->encode() == text);
    }
    CHECK_FALSE(CanonicalHorizonClass::decode("bogus").has_value());
    CHECK_FALSE(CanonicalHorizonClass::decode("fixed").has_value());
    CHECK_FALSE(CanonicalHorizonClass::decode("fixed:").has_value());
    CHECK_FALSE(CanonicalHorizonClass::decode("fixed:x").has_value());
    CHECK_FALSE(CanonicalHorizonClass::decode("fixed:0").has_value());
    CHECK_FALSE(CanonicalHorizonClass::decode("sometime:3").has_value());
}

TEST_CASE("extended alignment is the identity on canonical classes") {
    const CanonicalHorizonClass cls{HorizonSem::Fixed, 6};
    CHECK(extended_align(HorizonOrClass{cls}, cfg()) == cls);
    CHECK(extended_align(HorizonOrClass{RawHorizon{DurationHorizon{1.0, "year"}}}, cfg()) ==
          cls);
}

TEST_CASE("raw horizon tokens are deterministic") {
    CHECK(raw_horizon_token(DurationHorizon{12.0, "month"}) == "12-month");
    CHECK(raw_horizon_token(DurationHorizon{2.5, "year"}) == "2.5-year");
    CHECK(raw_horizon_token(IntervalHorizon{8.0, "week", "baseline"}) == "interval-8-week");
    CHECK(raw_horizon_token(TteHorizon{"mace", DurationHorizon{2.3, "year"}}) ==
          "tte-mace-2.3-year");
    CHECK(raw_horizon_token(TteHorizon{"mace", std::nullopt}) == "tte-mace");
    CHECK(raw_horizon_token(MissingHorizon{"n/a"}) == "missing");
}

TEST_CASE("alignment config validation") {
    AlignmentConfig c = AlignmentConfig::defaults();
    CHECK_NOTHROW(c.validate());

    c.rho = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AlignmentConfig::defaults();
    c.representatives.pop_back();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AlignmentConfig::defaults();
    c.bin_upper_edges[1] = c.bin_upper_edges[0];
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AlignmentConfig::defaults();
    c.unit_to_days["day"] = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
