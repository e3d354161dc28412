#include "evatlas/canonicalize.hpp"
#include "evatlas/config.hpp"
#include "evatlas/errors.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <variant>

using namespace evatlas;

namespace {

EvidenceObject make_object(const std::string& m_type, ReportedScale s_rep, double theta) {
    EvidenceObject o;
    o.estimand.population.p_bucket = "pop";
    o.estimand.contrast.intervention_id = "x";
    o.estimand.contrast.c_type = ContrastType::Binary;
    o.estimand.contrast.x0 = "control";
    o.estimand.contrast.x1 = "active";
    o.estimand.outcome.outcome_id = "y";
    o.estimand.outcome.outcome_type =
        s_rep == ReportedScale::Difference ? OutcomeType::Continuous : OutcomeType::Binary;
    o.estimand.horizon = DurationHorizon{6.0, "month"};
    const auto* info = MeasureRegistry::defaults().find(m_type);
    o.estimand.measure = MeasureFunctional{info->family, m_type, s_rep};
    o.claim.theta = theta;
    o.provenance.ref = "10.1000/unit";
    o.provenance.grade = Grade::B;
    o.provenance.n = 1000;
    o.provenance.adjustment = Adjustment::Basic;
    o.provenance.card_id = "c-unit";
    o.provenance.effect_index = 0;
    return o;
}

CanonicalClaim claim_of(const CanonicalizeResult& result) {
    REQUIRE(std::holds_alternative<CanonicalClaim>(result));
    return std::get<CanonicalClaim>(result);
}

ClaimRejection rejection_of(const CanonicalizeResult& result) {
    REQUIRE(std::holds_alternative<ClaimRejection>(result));
    return std::get<ClaimRejection>(result);
}

const BuildConfig& cfg() {
    static const BuildConfig c = BuildConfig::defaults();
    return c;
}

} // namespace

TEST_CASE("rule selection across the reported-form grid") {
    struct Row {
        const char* m_type;
        ReportedScale s_rep;
        Rule expect;
        bool moves_numbers;
    };
    const Row rows[] = {
        {"HR", ReportedScale::Ratio, Rule::R1, true},
        {"RR", ReportedScale::Ratio, Rule::R1, true},
        {"HR", ReportedScale::LogRatio, Rule::R2, false},
        {"coef_cox", ReportedScale::LogRatio, Rule::R3, false},
        {"coef_logistic", ReportedScale::Ratio, Rule::R3, false},  // binding wins over form
        {"MD", ReportedScale::Difference, Rule::D1, false},
        {"RD", ReportedScale::Difference, Rule::D1, false},
        {"coef_linear", ReportedScale::Difference, Rule::D2, false},
    };
    for (const auto& row : rows) {
        CAPTURE(row.m_type);
        const double theta = row.s_rep == ReportedScale::Ratio ? 0.8 : -0.25;
        const auto claim = claim_of(canonicalize(make_object(row.m_type, row.s_rep, theta), cfg()));
        CHECK(claim.alpha.rule_applied == row.expect);
        CHECK(claim.alpha.discarded_rules.empty());
        CHECK(claim.alpha.signature.s_rep == row.s_rep);
        if (row.moves_numbers)
            CHECK(claim.theta_canon == doctest::Approx(std::log(theta)).epsilon(1e-14));
        else
            CHECK(claim.theta_canon == theta);
        const auto family = MeasureRegistry::defaults().find(row.m_type)->family;
        CHECK(claim.estimand.measure.s_canon ==
              (family == MeasureFamily::Ratio ? CanonScale::Log : CanonScale::Identity));
    }
}

TEST_CASE("no applicable rule falls through to an explicit identity tag") {
    // A ratio-family measure declared on the difference scale matches nothing.
    auto object = make_object("HR", ReportedScale::Difference, 0.4);
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.rule_applied == Rule::Identity);
    CHECK(claim.theta_canon == 0.4);
}

TEST_CASE("ratio claims log-transform point and interval endpoint-wise") {
    auto object = make_object("HR", ReportedScale::Ratio, 0.73);
    object.claim.ci = Interval{0.58, 0.92};
    const auto claim = claim_of(canonicalize(object, cfg()));

    CHECK(claim.theta_canon == doctest::Approx(-0.31471074483970024).epsilon(1e-14));
    REQUIRE(claim.ci_canon.has_value());
    CHECK(claim.ci_canon->lower == doctest::Approx(-0.54472717544167204).epsilon(1e-14));
    CHECK(claim.ci_canon->upper == doctest::Approx(-0.083381608939051055).epsilon(1e-14));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::Reported);
    CHECK(claim.estimand.horizon.encode() == "fixed:5");
}

TEST_CASE("a reported interval beats se and p, which are retained for audit") {
    auto object = make_object("MD", ReportedScale::Difference, 0.2);
    object.claim.ci = Interval{0.1, 0.3};
    object.claim.se = 0.07;
    object.claim.p_value = 0.01;
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::Reported);
    CHECK(*claim.ci_canon == Interval{0.1, 0.3});
    CHECK(*claim.alpha.uncertainty.reported_se == 0.07);
    CHECK(*claim.alpha.uncertainty.reported_p == 0.01);
    CHECK_FALSE(claim.alpha.uncertainty.z.has_value());
}

TEST_CASE("intervals derive from the standard error at the configured coverage") {
    auto object = make_object("MD", ReportedScale::Difference, 0.5);
    object.claim.se = 0.1;
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::DerivedFromSe);
    CHECK(*claim.alpha.uncertainty.z == doctest::Approx(1.9599639845400542).epsilon(1e-14));
    REQUIRE(claim.ci_canon.has_value());
    CHECK(claim.ci_canon->lower == doctest::Approx(0.30400360154599458).epsilon(1e-13));
    CHECK(claim.ci_canon->upper == doctest::Approx(0.69599639845400542).epsilon(1e-13));

    CHECK(derive_ci_from_se(0.5, 0.1, 1.9599639845400542) ==
          Interval{0.5 - 1.9599639845400542 * 0.1, 0.5 + 1.9599639845400542 * 0.1});
}

TEST_CASE("intervals derive from the p-value when nothing else is reported") {
    auto object = make_object("MD", ReportedScale::Difference, 0.2);
    object.claim.p_value = 0.05;
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::DerivedFromP);
    CHECK(*claim.alpha.uncertainty.derived_se ==
          doctest::Approx(0.10204269138493079).epsilon(1e-13));
    REQUIRE(claim.ci_canon.has_value());
    // p = 0.05 at 95% coverage: the interval touches zero by construction.
    CHECK(claim.ci_canon->lower == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(claim.ci_canon->upper == doctest::Approx(0.4).epsilon(1e-13));

    CHECK(*derive_se_from_p(0.3, 0.003) == doctest::Approx(0.101087093115019).epsilon(1e-12));
}

TEST_CASE("p-value inversion happens on the canonical scale for ratio claims") {
    auto object = make_object("HR", ReportedScale::Ratio, 0.5);
    object.claim.p_value = 0.003;
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::DerivedFromP);
    // se = |ln 0.5| / PhiInv(1 - 0.003/2), not |0.5| / ...
    CHECK(*claim.alpha.uncertainty.derived_se ==
          doctest::Approx(0.23356077861225502).epsilon(1e-13));
    CHECK(claim.ci_canon->lower == doctest::Approx(-1.1509178948410981).epsilon(1e-13));
    CHECK(claim.ci_canon->upper == doctest::Approx(-0.23537646627879247).epsilon(1e-13));
}

TEST_CASE("a zero point estimate cannot be inverted from a p-value") {
    CHECK_FALSE(derive_se_from_p(0.0, 0.05).has_value());

    auto object = make_object("MD", ReportedScale::Difference, 0.0);
    object.claim.p_value = 0.04;
    const auto claim = claim_of(canonicalize(object, cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::Missing);
    CHECK_FALSE(claim.ci_canon.has_value());
    CHECK(*claim.alpha.uncertainty.reported_p == 0.04);  // still kept for audit
}

TEST_CASE("claims with no uncertainty information stay interval-free") {
    const auto claim = claim_of(canonicalize(make_object("MD", ReportedScale::Difference, 0.3), cfg()));
    CHECK(claim.alpha.uncertainty.kind == UncertaintyKind::Missing);
    CHECK_FALSE(claim.ci_canon.has_value());
}

TEST_CASE("domain violations reject the claim with a reason") {
    SUBCASE("nonpositive ratio point") {
        auto object = make_object("HR", ReportedScale::Ratio, -0.5);
        const auto rejection = rejection_of(canonicalize(object, cfg()));
        CHECK(rejection.reason == "theta must be > 0 on ratio scale");
        CHECK(rejection.card_id == "c-unit");
    }
    SUBCASE("nonpositive ratio interval endpoint") {
        auto object = make_object("HR", ReportedScale::Ratio, 0.5);
        object.claim.ci = Interval{-0.1, 0.9};
        CHECK(rejection_of(canonicalize(object, cfg())).reason ==
              "ratio-scale interval endpoints must be > 0");
    }
    SUBCASE("nonpositive standard error") {
        auto object = make_object("MD", ReportedScale::Difference, 0.2);
        object.claim.se = 0.0;
        CHECK(rejection_of(canonicalize(object, cfg())).reason ==
              "standard error must be > 0");
    }
    SUBCASE("out-of-range p-value") {
        auto object = make_object("MD", ReportedScale::Difference, 0.2);
        object.claim.p_value = 1.5;
        CHECK(rejection_of(canonicalize(object, cfg())).reason ==
              "p-value must lie strictly inside (0, 1)");
    }
    SUBCASE("measure type outside the vocabulary") {
        auto object = make_object("MD", ReportedScale::Difference, 0.2);
        object.estimand.measure.m_type = "SMD";
        const auto rejection = rejection_of(canonicalize(object, cfg()));
        CHECK(rejection.reason.find("not in configured vocabulary") != std::string::npos);
    }
    SUBCASE("declared family contradicts the vocabulary") {
        auto object = make_object("HR", ReportedScale::Ratio, 0.8);
        object.estimand.measure.m_family = MeasureFamily::Difference;
        const auto rejection = rejection_of(canonicalize(object, cfg()));
        CHECK(rejection.reason.find("contradicts") != std::string::npos);
    }
    SUBCASE("unknown horizon unit") {
        auto object = make_object("MD", ReportedScale::Difference, 0.2);
        object.estimand.horizon = DurationHorizon{1.0, "fortnight"};
        const auto rejection = rejection_of(canonicalize(object, cfg()));
        CHECK(rejection.reason.find("unknown time unit") != std::string::npos);
    }
}

TEST_CASE("skipping normalization leaves reported numbers untouched") {
    BuildConfig ablated = BuildConfig::defaults();
    ablated.ablation = AblationMode::NoCanonical;
    auto object = make_object("HR", ReportedScale::Ratio, 0.73);
    object.claim.ci = Interval{0.58, 0.92};
    const auto claim = claim_of(canonicalize(object, ablated));
    CHECK(claim.alpha.rule_applied == Rule::R1);  // selection still recorded
    CHECK(claim.theta_canon == 0.73);
    CHECK(*claim.ci_canon == Interval{0.58, 0.92});
}

TEST_CASE("canonicalization is idempotent through reinjection") {
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 500; ++i) {
        const auto object = oracles::random_evidence_object(rng, i);
        const auto result = canonicalize(object, cfg());
        if (!std::holds_alternative<CanonicalClaim>(result))
            continue;
        const auto& once = std::get<CanonicalClaim>(result);
        const auto twice = claim_of(canonicalize(reinject(once), cfg()));
        CAPTURE(i);
        CHECK(twice.estimand == once.estimand);
        CHECK(twice.theta_canon == once.theta_canon);
        CHECK(twice.ci_canon == once.ci_canon);
        CHECK(twice.provenance == once.provenance);
    }
}

TEST_CASE("reconstruction restores the reported claim") {
    SUBCASE("log rewrite undone endpoint-wise") {
        auto object = make_object("HR", ReportedScale::Ratio, 0.73);
        object.claim.ci = Interval{0.58, 0.92};
        object.claim.se = 0.118;
        object.claim.p_value = 0.008;
        const auto claim = claim_of(canonicalize(object, cfg()));
        const auto back = reconstruct(claim);
        CHECK(back.claim.theta == doctest::Approx(0.73).epsilon(1e-14));
        CHECK(back.claim.ci->lower == doctest::Approx(0.58).epsilon(1e-14));
        CHECK(back.claim.ci->upper == doctest::Approx(0.92).epsilon(1e-14));
        CHECK(*back.claim.se == 0.118);
        CHECK(*back.claim.p_value == 0.008);
        CHECK(back.estimand.measure == object.estimand.measure);
        CHECK(back.estimand.horizon == object.estimand.horizon);
        CHECK(back.provenance == object.provenance);
    }
    SUBCASE("derived intervals are not invented on the way back") {
        auto object = make_object("MD", ReportedScale::Difference, 0.5);
        object.claim.se = 0.1;
        const auto claim = claim_of(canonicalize(object, cfg()));
        const auto back = reconstruct(claim);
        CHECK(back == object);  // exact: identity rules never move numbers
    }
    SUBCASE("malformed conditions blocks are hard errors") {
        auto object = make_object("HR", ReportedScale::Ratio, 0.73);
        object.claim.ci = Interval{0.58, 0.92};
        auto claim = claim_of(canonicalize(object, cfg()));

        auto corrupted = claim;
        corrupted.alpha.signature.s_rep = ReportedScale::LogRatio;
        CHECK_THROWS_AS(reconstruct(corrupted), ReconstructionError);

        corrupted = claim;
        corrupted.ci_canon.reset();
        CHECK_THROWS_AS(reconstruct(corrupted), ReconstructionError);
    }
}

TEST_CASE("random round trips: reconstruct after canonicalize is the identity") {
    std::mt19937_64 rng(99);
    int seen = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto object = oracles::random_evidence_object(rng, i);
        const auto result = canonicalize(object, cfg());
        REQUIRE(std::holds_alternative<CanonicalClaim>(result));
        ++seen;
        const auto back = reconstruct(std::get<CanonicalClaim>(result));

        CAPTURE(i);
        CHECK(back.estimand == object.estimand);
        CHECK(back.provenance == object.provenance);
        CHECK(back.claim.se == object.claim.se);
        CHECK(back.claim.p_value == object.claim.p_value);
        CHECK(back.claim.theta ==
              doctest::Approx(object.claim.theta).epsilon(1e-12));
        CHECK(back.claim.ci.has_value() == object.claim.ci.has_value());
        if (back.claim.ci) {
            CHECK(back.claim.ci->lower ==
                  doctest::Approx(object.claim.ci->lower).epsilon(1e-12));
            CHECK(back.claim.ci->upper ==
                  doctest::Approx(object.claim.ci->upper).epsilon(1e-12));
        }
    }
    CHECK(seen == 1000);  // the generator only produces admissible objects
}
