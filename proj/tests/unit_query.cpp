#include "evatlas/fixtures.hpp"
#include "evatlas/query.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

using namespace evatlas;
using oracles::simple_canonical_claim;

namespace {

CanonicalClaim at(const std::string& card, double theta, Interval ci, const std::string& x,
                  const std::string& y, int bin = 5, const std::string& pop = "pop") {
    auto c = simple_canonical_claim(card, theta, ci, 1000, x, y);
    c.estimand.horizon = CanonicalHorizonClass{HorizonSem::Fixed, bin};
    c.estimand.population.p_bucket = pop;
    return c;
}

// One atlas exercising every per-kind behavior, with disjoint token families
// per scenario so the cases cannot interfere.
const Atlas& mini() {
    static const Atlas atlas = [] {
        std::vector<CanonicalClaim> claims;

        // Plain (x, y) pair across two horizons with a clear quality gap.
        claims.push_back(at("m-1", 0.5, Interval{0.3, 0.7}, "x", "y", 5));
        auto strong = at("m-2", 0.9, Interval{0.7, 1.1}, "x", "y", 4);
        strong.provenance.grade = Grade::A;
        strong.provenance.n = 90000;
        strong.provenance.adjustment = Adjustment::Rich;
        claims.push_back(strong);

        // Exact quality tie across two horizons: identical provenance/numbers.
        claims.push_back(at("t-1", 0.2, Interval{0.1, 0.3}, "x2", "y2", 4));
        claims.push_back(at("t-1", 0.2, Interval{0.1, 0.3}, "x2", "y2", 6));

        // Heterogeneous pair and a mixed-measure-type pair.
        claims.push_back(at("h-1", 0.5, Interval{-0.2, 1.2}, "x3", "y3"));
        claims.push_back(at("h-2", -0.5, Interval{-1.2, 0.2}, "x3", "y3"));
        auto rd = at("mm-2", 0.25, Interval{0.15, 0.35}, "x3b", "y3b");
        rd.estimand.measure.m_type = "RD";
        claims.push_back(at("mm-1", 0.3, Interval{0.2, 0.4}, "x3b", "y3b"));
        claims.push_back(rd);

        // Mediation triangle with the worked numbers.
        claims.push_back(at("md-1", 0.4, Interval{0.2, 0.6}, "x4", "m4"));
        claims.push_back(at("md-2", 0.5, Interval{0.3, 0.7}, "m4", "y4"));
        claims.push_back(at("md-3", 0.8, Interval{0.5, 1.1}, "x4", "y4"));

        // Joint pair: intervals at exactly theta +- z * 0.1.
        const double arm = 1.9599639845400542 * 0.1;
        claims.push_back(at("j-1", -0.3, Interval{-0.3 - arm, -0.3 + arm}, "j1", "jy"));
        claims.push_back(at("j-2", -0.2, Interval{-0.2 - arm, -0.2 + arm}, "j2", "jy"));

        // Counterfactual and subgroup populations.
        claims.push_back(at("cf-1", 0.3, Interval{0.1, 0.5}, "c4", "c5", 5, "ckd2"));
        claims.push_back(at("cg-1", 0.2, Interval{0.05, 0.35}, "s1", "s2", 5, "elderly2"));
        claims.push_back(at("cg-2", 0.4, Interval{0.2, 0.6}, "s1", "s2", 5, "pop"));

        // Trajectory pair with a sign flip across horizons.
        claims.push_back(at("tr-1", 0.2, Interval{0.1, 0.3}, "w", "wy", 4));
        claims.push_back(at("tr-2", -0.2, Interval{-0.3, -0.1}, "w", "wy", 6));

        return build_atlas(partition(std::move(claims)), BuildConfig::defaults());
    }();
    return atlas;
}

QuerySpec spec_do(const std::string& x, const std::string& y) {
    QuerySpec s;
    s.kind = QueryKind::Do;
    s.x_id = x;
    s.y_id = y;
    return s;
}

const std::set<Flag> kBlocking = {Flag::MissingEdge,   Flag::MissingPath,
                                  Flag::MissingField,  Flag::MixedMtype,
                                  Flag::AssumptionRequired, Flag::NoSubgroupEvidence};

} // namespace

TEST_CASE("match_key applies each constraint independently") {
    const BucketKey key = mini().edges.front().key;
    QueryConstraints none;
    CHECK(match_key(key, key.x_id, key.y_id, none));
    CHECK_FALSE(match_key(key, key.x_id, "elsewhere", none));

    QueryConstraints pop;
    pop.p_bucket = key.p_bucket;
    CHECK(match_key(key, key.x_id, key.y_id, pop));
    pop.p_bucket = "nope";
    CHECK_FALSE(match_key(key, key.x_id, key.y_id, pop));

    QueryConstraints tau;
    tau.tau_class = key.tau_class;
    CHECK(match_key(key, key.x_id, key.y_id, tau));
    tau.tau_class = CanonicalHorizonClass{HorizonSem::Tte, std::nullopt};
    CHECK_FALSE(match_key(key, key.x_id, key.y_id, tau));

    QueryConstraints fam;
    fam.m_family = MeasureFamily::Ratio;
    CHECK_FALSE(match_key(key, key.x_id, key.y_id, fam));
}

TEST_CASE("resolve_edge maximizes default-kernel quality across candidate buckets") {
    const AtlasEdge* edge = resolve_edge(mini(), "x", "y", {});
    REQUIRE(edge != nullptr);
    CHECK(edge->default_kernel().provenance.card_id == "m-2");

    QueryConstraints tau;
    tau.tau_class = CanonicalHorizonClass{HorizonSem::Fixed, 5};
    edge = resolve_edge(mini(), "x", "y", tau);
    REQUIRE(edge != nullptr);
    CHECK(edge->default_kernel().provenance.card_id == "m-1");

    CHECK(resolve_edge(mini(), "x", "nowhere", {}) == nullptr);
    QueryConstraints fam;
    fam.m_family = MeasureFamily::Ratio;
    CHECK(resolve_edge(mini(), "x", "y", fam) == nullptr);
}

TEST_CASE("exact quality ties resolve to the smaller key encoding") {
    const AtlasEdge* edge = resolve_edge(mini(), "x2", "y2", {});
    REQUIRE(edge != nullptr);
    // "fixed:4" precedes "fixed:6" lexicographically.
    CHECK(edge->key.tau_class == CanonicalHorizonClass{HorizonSem::Fixed, 4});
}

TEST_CASE("intervention answers carry estimate, provenance, and witness") {
    const auto answer = q_do(mini(), spec_do("x", "y"));
    CHECK(answer.flags == std::set<Flag>{Flag::Executable});
    CHECK(*answer.theta_hat == 0.9);
    CHECK(*answer.ci == Interval{0.7, 1.1});
    CHECK(answer.provenance->card_id == "m-2");
    CHECK(answer.estimand->measure.m_type == "MD");
    REQUIRE(answer.witness_keys.size() == 1);
    CHECK(answer.witness_keys[0].encode().find("|x|y|") != std::string::npos);
}

TEST_CASE("intervention answers surface bucket disagreement") {
    const auto het = q_do(mini(), spec_do("x3", "y3"));
    CHECK(het.flags == std::set<Flag>{Flag::Executable, Flag::Heterogeneity});
    REQUIRE(het.conflict.has_value());
    CHECK(het.conflict->has(ConflictType::Heterogeneity));

    const auto mixed = q_do(mini(), spec_do("x3b", "y3b"));
    CHECK(mixed.flags == std::set<Flag>{Flag::Executable, Flag::MixedMtype});
}

TEST_CASE("missing inputs and missing pairs are explicit, never guessed") {
    QuerySpec incomplete;
    incomplete.kind = QueryKind::Do;
    incomplete.x_id = "x";
    CHECK(q_do(mini(), incomplete).flags == std::set<Flag>{Flag::MissingField});

    CHECK(q_do(mini(), spec_do("x", "zz")).flags == std::set<Flag>{Flag::MissingEdge});
}

TEST_CASE("mediation composes the worked product-of-legs numbers") {
    QuerySpec spec;
    spec.kind = QueryKind::Med;
    spec.x_id = "x4";
    spec.m_id = "m4";
    spec.y_id = "y4";
    const auto med = q_med(mini(), spec);

    CHECK(med.total.flags == std::set<Flag>{Flag::Executable});
    CHECK(*med.total.theta_hat == 0.8);

    CHECK(med.indirect.flags ==
          std::set<Flag>{Flag::Executable, Flag::AssumptionRequired});
    CHECK(*med.indirect.theta_hat == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(med.indirect.ci->lower == doctest::Approx(0.071937515251343026).epsilon(1e-12));
    CHECK(med.indirect.ci->upper == doctest::Approx(0.32806248474865697).epsilon(1e-12));

    CHECK(med.direct.flags == std::set<Flag>{Flag::Executable, Flag::AssumptionRequired});
    CHECK(*med.direct.theta_hat == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(med.direct.ci->lower == doctest::Approx(0.27380987139399819).epsilon(1e-12));
    CHECK(med.direct.ci->upper == doctest::Approx(0.92619012860600181).epsilon(1e-12));
}

TEST_CASE("mediation with no path blocks all three components") {
    QuerySpec spec;
    spec.kind = QueryKind::Med;
    spec.x_id = "x4";
    spec.m_id = "nowhere";
    spec.y_id = "y4";
    const auto med = q_med(mini(), spec);
    for (const auto* part : {&med.total, &med.direct, &med.indirect})
        CHECK(part->flags.count(Flag::MissingPath) == 1);
    CHECK_FALSE(med.indirect.theta_hat.has_value());
}

TEST_CASE("joint effects add on a shared scale with quadrature uncertainty") {
    QuerySpec spec;
    spec.kind = QueryKind::Joint;
    spec.x_id = "j1";
    spec.x2_id = "j2";
    spec.y_id = "jy";
    const auto answer = q_joint(mini(), spec);
    CHECK(answer.flags == std::set<Flag>{Flag::Executable, Flag::AssumptionRequired});
    CHECK(*answer.theta_hat == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(answer.ci->lower == doctest::Approx(-0.77718076486993559).epsilon(1e-12));
    CHECK(answer.ci->upper == doctest::Approx(-0.22281923513006441).epsilon(1e-12));
    CHECK(answer.witness_keys.size() == 2);

    spec.x2_id = "zz";
    CHECK(q_joint(mini(), spec).flags.count(Flag::MissingEdge) == 1);
}

TEST_CASE("counterfactual queries require an explicit population context") {
    QuerySpec spec;
    spec.kind = QueryKind::Cf;
    spec.x_id = "c4";
    spec.y_id = "c5";
    CHECK(q_cf(mini(), spec).flags == std::set<Flag>{Flag::MissingField});

    spec.context["population"] = "ckd2";
    const auto found = q_cf(mini(), spec);
    CHECK(found.flags == std::set<Flag>{Flag::Executable, Flag::AssumptionRequired});
    CHECK(*found.theta_hat == 0.3);

    spec.context["population"] = "hfpef";
    CHECK(q_cf(mini(), spec).flags == std::set<Flag>{Flag::MissingEdge});
}

TEST_CASE("subgroup queries distinguish missing evidence from missing pairs") {
    QuerySpec spec;
    spec.kind = QueryKind::Cate;
    spec.x_id = "s1";
    spec.y_id = "s2";
    spec.subgroup = "elderly2";
    const auto found = q_cate(mini(), spec);
    CHECK(found.flags == std::set<Flag>{Flag::Executable});
    CHECK(*found.theta_hat == 0.2);

    spec.subgroup = "pediatric";
    CHECK(q_cate(mini(), spec).flags == std::set<Flag>{Flag::NoSubgroupEvidence});

    spec.y_id = "zz";
    CHECK(q_cate(mini(), spec).flags == std::set<Flag>{Flag::MissingEdge});
}

TEST_CASE("trajectories mark cross-time sign flips and coverage gaps") {
    QuerySpec spec;
    spec.kind = QueryKind::Traj;
    spec.x_id = "w";
    spec.y_id = "wy";
    spec.time_set = {CanonicalHorizonClass{HorizonSem::Fixed, 4},
                     CanonicalHorizonClass{HorizonSem::Fixed, 6}};

    auto points = q_traj(mini(), spec);
    REQUIRE(points.size() == 2);
    for (const auto& point : points) {
        CHECK(point.answer.flags == std::set<Flag>{Flag::Executable, Flag::Conflict});
        CHECK(point.answer.flags.count(Flag::InsufficientTimeCoverage) == 0);
    }
    CHECK(*points[0].answer.theta_hat == 0.2);
    CHECK(*points[1].answer.theta_hat == -0.2);

    // A requested time with no evidence degrades the whole trajectory.
    spec.time_set = {CanonicalHorizonClass{HorizonSem::Fixed, 4},
                     CanonicalHorizonClass{HorizonSem::Fixed, 5}};
    points = q_traj(mini(), spec);
    REQUIRE(points.size() == 2);
    CHECK(points[0].answer.flags ==
          std::set<Flag>{Flag::Executable, Flag::InsufficientTimeCoverage});
    CHECK(points[1].answer.flags ==
          std::set<Flag>{Flag::MissingEdge, Flag::InsufficientTimeCoverage});

    // Duplicate times collapse to their first occurrence.
    spec.time_set = {CanonicalHorizonClass{HorizonSem::Fixed, 4},
                     CanonicalHorizonClass{HorizonSem::Fixed, 4}};
    CHECK(q_traj(mini(), spec).size() == 1);

    // No time set at all: a single explicit refusal.
    spec.time_set.clear();
    points = q_traj(mini(), spec);
    REQUIRE(points.size() == 1);
    CHECK(points[0].answer.flags == std::set<Flag>{Flag::MissingField});
}

TEST_CASE("every answer is executable or explains itself, never both ways") {
    const auto corpus = make_fixture_corpus(7);
    const Atlas atlas = compile_corpus(corpus.cards, corpus.config);

    std::size_t checked = 0;
    for (const auto& fixture : corpus.queries) {
        for (const auto& answer : oracles::run_query(atlas, fixture.spec)) {
            ++checked;
            CAPTURE(fixture.name);
            const bool executable = answer.flags.count(Flag::Executable) > 0;
            if (executable) {
                CHECK(answer.flags.count(Flag::MissingEdge) == 0);
                CHECK(answer.flags.count(Flag::MissingPath) == 0);
                CHECK(answer.flags.count(Flag::MissingField) == 0);
                CHECK(answer.theta_hat.has_value());
            } else {
                bool explained = false;
                for (Flag f : kBlocking)
                    explained = explained || answer.flags.count(f) > 0;
                CHECK(explained);
            }
        }
    }
    CHECK(checked >= corpus.queries.size());
}
