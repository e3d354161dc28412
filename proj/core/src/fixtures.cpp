#include "evatlas/fixtures.hpp"

#include "evatlas/errors.hpp"
#include "evatlas/json_io.hpp"
#include "serde.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace evatlas {

namespace {

// Frozen reference values (see the numeric tests for their derivations).
constexpr double kLn073 = -0.31471074483970024;
constexpr double kLn058 = -0.54472717544167203;
constexpr double kLn092 = -0.083381608939051058;
constexpr double kLn060 = -0.51082562376599068;
constexpr double kLn088 = -0.1278333715098849;
constexpr double kNieLo = 0.071937515251343026;
constexpr double kNieHi = 0.32806248474865697;
constexpr double kNdeLo = 0.27380987139399819;
constexpr double kNdeHi = 0.92619012860600181;
constexpr double kJointLo = -0.77718076486993559;
constexpr double kJointHi = -0.22281923513006441;

PopulationSpec pop(std::string bucket) {
    PopulationSpec p;
    p.p_bucket = std::move(bucket);
    return p;
}

InterventionContrast binary_contrast(std::string id) {
    InterventionContrast c;
    c.intervention_id = std::move(id);
    c.c_type = ContrastType::Binary;
    c.x0 = "control";
    c.x1 = c.intervention_id;
    return c;
}

InterventionContrast per_unit_contrast(std::string id, double delta, std::string unit) {
    InterventionContrast c;
    c.intervention_id = std::move(id);
    c.c_type = ContrastType::PerUnit;
    c.delta = delta;
    c.unit = std::move(unit);
    return c;
}

InterventionContrast level_contrast(std::string id, ContrastType type, std::string x0,
                                    std::string x1) {
    InterventionContrast c;
    c.intervention_id = std::move(id);
    c.c_type = type;
    c.x0 = std::move(x0);
    c.x1 = std::move(x1);
    return c;
}

OutcomeSpec outcome(std::string id, OutcomeType type) {
    OutcomeSpec o;
    o.outcome_id = std::move(id);
    o.outcome_type = type;
    return o;
}

RawHorizon duration(double value, std::string unit) {
    return RawHorizon{DurationHorizon{value, std::move(unit)}};
}

MeasureFunctional measure(std::string m_type, ReportedScale s_rep) {
    const auto* info = MeasureRegistry::defaults().find(m_type);
    return MeasureFunctional{info->family, std::move(m_type), s_rep};
}

ClaimObject est_ci(double theta, double lo, double hi) {
    ClaimObject c;
    c.theta = theta;
    c.ci = Interval{lo, hi};
    return c;
}

ClaimObject est_se(double theta, double se) {
    ClaimObject c;
    c.theta = theta;
    c.se = se;
    return c;
}

ClaimObject est_p(double theta, double p) {
    ClaimObject c;
    c.theta = theta;
    c.p_value = p;
    return c;
}

ClaimObject est_bare(double theta) {
    ClaimObject c;
    c.theta = theta;
    return c;
}

struct CardBuilder {
    EvidenceCardFile card;

    CardBuilder(std::string id, Grade grade, std::optional<std::int64_t> n, Adjustment adj,
                std::optional<int> year = 2020) {
        card.card_id = std::move(id);
        card.doi = "10.5555/" + card.card_id;
        card.year = year;
        card.grade = grade;
        card.n = n;
        card.adjustment = adj;
    }

    CardBuilder& effect(PopulationSpec p, InterventionContrast x, OutcomeSpec y, RawHorizon t,
                        MeasureFunctional m, ClaimObject e) {
        EffectEntry entry;
        entry.effect_index = static_cast<int>(card.effects.size());
        entry.population = std::move(p);
        entry.intervention = std::move(x);
        entry.outcome = std::move(y);
        entry.time = std::move(t);
        entry.measure = std::move(m);
        entry.estimate = std::move(e);
        card.effects.push_back(std::move(entry));
        return *this;
    }

    ParsedCard done() const {
        ParsedCard parsed;
        parsed.card = card;
        parsed.objects = lower_card(card);
        parsed.effects_seen = static_cast<int>(card.effects.size());
        return parsed;
    }
};

// Uniform double in [lo, hi) from the top 53 bits; mt19937_64 output is
// fully specified, so fixtures are bit-identical across platforms.
double unif(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

CanonicalHorizonClass fixed_bin(int bin) { return CanonicalHorizonClass{HorizonSem::Fixed, bin}; }

ExpectedAnswer expect(std::set<std::string> flags, std::optional<double> theta = std::nullopt,
                      std::optional<Interval> ci = std::nullopt) {
    return ExpectedAnswer{std::move(flags), theta, ci};
}

QuerySpec do_spec(std::string x, std::string y) {
    QuerySpec s;
    s.kind = QueryKind::Do;
    s.x_id = std::move(x);
    s.y_id = std::move(y);
    return s;
}

} // namespace

FixtureCorpus make_fixture_corpus(std::uint64_t seed) {
    FixtureCorpus out;
    out.seed = seed;
    out.config = BuildConfig::defaults();

    auto& cards = out.cards;

    // --- merged worked-example bucket: three reporting styles, one bucket ---
    cards.push_back(CardBuilder("c-s1a", Grade::A, 17160, Adjustment::Rich, 2019)
                        .effect(pop("t2dm"), binary_contrast("sglt2i"),
                                outcome("mace", OutcomeType::Binary), duration(12, "month"),
                                measure("HR", ReportedScale::Ratio), est_ci(0.73, 0.58, 0.92))
                        .done());
    cards.push_back(CardBuilder("c-s1b", Grade::B, 8246, Adjustment::Basic, 2020)
                        .effect(pop("t2dm"), binary_contrast("sglt2i"),
                                outcome("mace", OutcomeType::Binary), duration(1, "year"),
                                measure("HR", ReportedScale::LogRatio),
                                est_ci(-0.315, -0.545, -0.083))
                        .done());
    cards.push_back(CardBuilder("c-s1c", Grade::B, 10142, Adjustment::Basic, 2021)
                        .effect(pop("t2dm"), binary_contrast("sglt2i"),
                                outcome("mace", OutcomeType::Binary), duration(52, "week"),
                                measure("RR", ReportedScale::Ratio), est_ci(0.76, 0.61, 0.94))
                        .done());

    // --- clean single-claim edge ---
    cards.push_back(CardBuilder("c-s2", Grade::A, 4744, Adjustment::Rich, 2019)
                        .effect(pop("hfref"), binary_contrast("dapagliflozin"),
                                outcome("hf-worsening-or-cv-death", OutcomeType::TimeToEvent),
                                duration(18, "month"), measure("HR", ReportedScale::Ratio),
                                est_ci(0.73, 0.60, 0.88))
                        .done());

    // --- directional (and interval) conflict ---
    cards.push_back(CardBuilder("c-s3a", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-dir"), binary_contrast("drug-dir"),
                                outcome("out-dir", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.25, 0.10, 0.40))
                        .done());
    cards.push_back(CardBuilder("c-s3b", Grade::A, 5000, Adjustment::Rich)
                        .effect(pop("pop-dir"), binary_contrast("drug-dir"),
                                outcome("out-dir", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(-0.25, -0.40, -0.10))
                        .done());

    // --- interval conflict without directional disagreement ---
    cards.push_back(CardBuilder("c-s4a", Grade::B, 3000, Adjustment::Basic)
                        .effect(pop("pop-int"), binary_contrast("drug-int"),
                                outcome("out-int", OutcomeType::Continuous),
                                duration(3, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.15, 0.10, 0.20))
                        .done());
    cards.push_back(CardBuilder("c-s4b", Grade::C, 800, Adjustment::None)
                        .effect(pop("pop-int"), binary_contrast("drug-int"),
                                outcome("out-int", OutcomeType::Continuous),
                                duration(3, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.60, 0.50, 0.70))
                        .done());

    // --- heterogeneity without directional/interval conflict ---
    cards.push_back(CardBuilder("c-s5a", Grade::B, 1500, Adjustment::Basic)
                        .effect(pop("pop-het"), binary_contrast("drug-het"),
                                outcome("out-het", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.5, -0.2, 1.2))
                        .done());
    cards.push_back(CardBuilder("c-s5b", Grade::C, 1500, Adjustment::None)
                        .effect(pop("pop-het"), binary_contrast("drug-het"),
                                outcome("out-het", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(-0.5, -1.2, 0.2))
                        .done());

    // --- mediation: numeric difference-family triangle ---
    cards.push_back(CardBuilder("c-s6a", Grade::A, 5000, Adjustment::Rich)
                        .effect(pop("pop-med"), binary_contrast("med-x"),
                                outcome("med-m", OutcomeType::Continuous), duration(6, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.4, 0.2, 0.6))
                        .done());
    cards.push_back(CardBuilder("c-s6b", Grade::A, 5000, Adjustment::Rich)
                        .effect(pop("pop-med"), binary_contrast("med-m"),
                                outcome("med-y", OutcomeType::Continuous), duration(6, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.5, 0.3, 0.7))
                        .done());
    cards.push_back(CardBuilder("c-s6c", Grade::A, 5000, Adjustment::Rich)
                        .effect(pop("pop-med"), binary_contrast("med-x"),
                                outcome("med-y", OutcomeType::Continuous), duration(6, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.8, 0.5, 1.1))
                        .done());

    // --- mediation with a missing mediator->outcome leg ---
    cards.push_back(CardBuilder("c-s7a", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-med2"), binary_contrast("med2-x"),
                                outcome("med2-m", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.3, 0.1, 0.5))
                        .done());
    cards.push_back(CardBuilder("c-s7b", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-med2"), binary_contrast("med2-x"),
                                outcome("med2-y", OutcomeType::Continuous),
                                duration(6, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.6, 0.4, 0.8))
                        .done());

    // --- mediation with ratio-family legs (no product rule) ---
    cards.push_back(CardBuilder("c-s8a", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-med3"), binary_contrast("med3-x"),
                                outcome("med3-m", OutcomeType::Binary), duration(12, "month"),
                                measure("HR", ReportedScale::Ratio), est_ci(0.8, 0.7, 0.9))
                        .done());
    cards.push_back(CardBuilder("c-s8b", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-med3"), binary_contrast("med3-m"),
                                outcome("med3-y", OutcomeType::Binary), duration(12, "month"),
                                measure("HR", ReportedScale::Ratio), est_ci(0.85, 0.75, 0.95))
                        .done());

    // --- mediation with mixed-family legs ---
    cards.push_back(CardBuilder("c-s9a", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-med4"), binary_contrast("med4-x"),
                                outcome("med4-m", OutcomeType::Binary), duration(12, "month"),
                                measure("HR", ReportedScale::Ratio), est_ci(0.8, 0.7, 0.9))
                        .done());
    cards.push_back(CardBuilder("c-s9b", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-med4"), binary_contrast("med4-m"),
                                outcome("med4-y", OutcomeType::Continuous),
                                duration(12, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.3, 0.1, 0.5))
                        .done());
    cards.push_back(CardBuilder("c-s9c", Grade::B, 2000, Adjustment::Basic)
                        .effect(pop("pop-med4"), binary_contrast("med4-x"),
                                outcome("med4-y", OutcomeType::Continuous),
                                duration(12, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.5, 0.2, 0.8))
                        .done());

    // --- joint: two same-family edges with se-only uncertainty ---
    cards.push_back(CardBuilder("c-s10a", Grade::A, 3000, Adjustment::Rich)
                        .effect(pop("pop-joint"), binary_contrast("joint-x1"),
                                outcome("joint-y", OutcomeType::TimeToEvent),
                                duration(12, "month"), measure("HR", ReportedScale::LogRatio),
                                est_se(-0.3, 0.1))
                        .done());
    cards.push_back(CardBuilder("c-s10b", Grade::A, 3000, Adjustment::Rich)
                        .effect(pop("pop-joint"), binary_contrast("joint-x2"),
                                outcome("joint-y", OutcomeType::TimeToEvent),
                                duration(12, "month"), measure("HR", ReportedScale::LogRatio),
                                est_se(-0.2, 0.1))
                        .done());

    // --- joint across families ---
    cards.push_back(CardBuilder("c-s11a", Grade::A, 3000, Adjustment::Rich)
                        .effect(pop("pop-joint2"), binary_contrast("joint2-x1"),
                                outcome("joint2-y", OutcomeType::Binary), duration(12, "month"),
                                measure("HR", ReportedScale::Ratio), est_ci(0.8, 0.7, 0.9))
                        .done());
    cards.push_back(CardBuilder("c-s11b", Grade::A, 3000, Adjustment::Rich)
                        .effect(pop("pop-joint2"), binary_contrast("joint2-x2"),
                                outcome("joint2-y", OutcomeType::Binary), duration(12, "month"),
                                measure("RD", ReportedScale::Difference),
                                est_ci(0.3, 0.1, 0.5))
                        .done());

    // --- joint with one absent edge ---
    cards.push_back(CardBuilder("c-s12a", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-joint3"), binary_contrast("joint3-x1"),
                                outcome("joint3-y", OutcomeType::Continuous),
                                duration(12, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.3, 0.1, 0.5))
                        .done());

    // --- counterfactual base edge ---
    cards.push_back(CardBuilder("c-s13a", Grade::B, 1200, Adjustment::Basic)
                        .effect(pop("ckd"), binary_contrast("cf-x"),
                                outcome("cf-y", OutcomeType::Continuous), duration(12, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.3, 0.1, 0.5))
                        .done());

    // --- subgroup base edge ---
    cards.push_back(CardBuilder("c-s14a", Grade::B, 900, Adjustment::Basic)
                        .effect(pop("elderly"), binary_contrast("cate-x"),
                                outcome("cate-y", OutcomeType::Continuous),
                                duration(12, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(0.2, 0.05, 0.35))
                        .done());

    // --- trajectory: sign flip across horizons ---
    cards.push_back(CardBuilder("c-s15a", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-traj"), binary_contrast("traj-x"),
                                outcome("traj-y", OutcomeType::Continuous),
                                duration(12, "week"), measure("MD", ReportedScale::Difference),
                                est_ci(0.2, 0.1, 0.3))
                        .done());
    cards.push_back(CardBuilder("c-s15b", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-traj"), binary_contrast("traj-x"),
                                outcome("traj-y", OutcomeType::Continuous),
                                duration(12, "month"), measure("MD", ReportedScale::Difference),
                                est_ci(-0.2, -0.3, -0.1))
                        .done());

    // --- trajectory with partial horizon coverage ---
    cards.push_back(CardBuilder("c-s16a", Grade::B, 1000, Adjustment::Basic)
                        .effect(pop("pop-traj2"), binary_contrast("traj2-x"),
                                outcome("traj2-y", OutcomeType::Continuous),
                                duration(12, "week"), measure("MD", ReportedScale::Difference),
                                est_ci(0.1, 0.05, 0.15))
                        .done());

    // --- contrast-type pair that only the weakened key merges ---
    cards.push_back(CardBuilder("c-s17a", Grade::B, 600, Adjustment::Basic)
                        .effect(pop("pop-wk"), per_unit_contrast("wk-x", 10.0, "mg"),
                                outcome("wk-y", OutcomeType::Continuous), duration(12, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.1, 0.0, 0.2))
                        .done());
    cards.push_back(CardBuilder("c-s17b", Grade::B, 700, Adjustment::Basic)
                        .effect(pop("pop-wk"), binary_contrast("wk-x"),
                                outcome("wk-y", OutcomeType::Continuous), duration(12, "month"),
                                measure("MD", ReportedScale::Difference),
                                est_ci(0.15, 0.05, 0.25))
                        .done());

    // --- seeded filler singletons: vary numbers, never structure ---
    std::mt19937_64 rng(seed);
    const char* kMeasures[] = {"MD",  "RD", "HR",       "RR",
                               "OR",  "coef_cox", "coef_logistic", "coef_linear"};
    for (int i = 0; i < 25; ++i) {
        char suffix[8];
        std::snprintf(suffix, sizeof suffix, "%02d", i);
        const std::string tag = suffix;
        const std::string m_type = kMeasures[i % 8];
        const auto* info = MeasureRegistry::defaults().find(m_type);
        const bool ratio_family = info->family == MeasureFamily::Ratio;

        ReportedScale s_rep;
        if (!ratio_family)
            s_rep = ReportedScale::Difference;
        else if (info->bound_to_canonical)
            s_rep = ReportedScale::LogRatio;
        else
            s_rep = ReportedScale::Ratio;

        double theta;
        Interval ci{0, 0};
        if (s_rep == ReportedScale::Ratio) {
            theta = (rng() & 1) ? unif(rng, 1.1, 1.8) : unif(rng, 0.55, 0.9);
            ci = Interval{theta * unif(rng, 0.78, 0.9), theta * unif(rng, 1.1, 1.3)};
        } else {
            const double magnitude = unif(rng, 0.1, 0.7);
            theta = (rng() & 1) ? magnitude : -magnitude;
            const double hw = unif(rng, 0.05, 0.4);
            ci = Interval{theta - hw, theta + hw};
        }

        ClaimObject claim;
        switch (i % 4) {
            case 0: claim = est_ci(theta, ci.lower, ci.upper); break;
            case 1: claim = est_se(theta, unif(rng, 0.03, 0.2)); break;
            case 2: claim = est_p(theta, unif(rng, 0.001, 0.2)); break;
            default: claim = est_bare(theta); break;
        }

        RawHorizon horizon;
        switch (i % 8) {
            case 0: horizon = duration(10, "day"); break;
            case 1: horizon = duration(8, "week"); break;
            case 2: horizon = duration(6, "month"); break;
            case 3: horizon = duration(2, "year"); break;
            case 4: horizon = RawHorizon{IntervalHorizon{8, "week", "randomization"}}; break;
            case 5:
                horizon = RawHorizon{TteHorizon{"evt-" + tag, DurationHorizon{2.3, "year"}}};
                break;
            case 6: horizon = RawHorizon{TteHorizon{"evt-" + tag, std::nullopt}}; break;
            default: horizon = RawHorizon{MissingHorizon{"not reported"}}; break;
        }

        InterventionContrast contrast;
        switch (i % 4) {
            case 0: contrast = binary_contrast("rnd-x-" + tag); break;
            case 1: contrast = per_unit_contrast("rnd-x-" + tag, 10.0, "mg"); break;
            case 2:
                contrast = level_contrast("rnd-x-" + tag, ContrastType::ArmVsControl, "arm-a",
                                          "arm-b");
                break;
            default:
                contrast = level_contrast("rnd-x-" + tag, ContrastType::Categorical, "cat-low",
                                          "cat-high");
                break;
        }

        const OutcomeType y_type = !ratio_family ? OutcomeType::Continuous
                                   : m_type == "coef_cox" ? OutcomeType::TimeToEvent
                                                          : OutcomeType::Binary;
        const Grade grade = i % 3 == 0 ? Grade::A : i % 3 == 1 ? Grade::B : Grade::C;
        const Adjustment adj = i % 3 == 0   ? Adjustment::Rich
                               : i % 3 == 1 ? Adjustment::Basic
                                            : Adjustment::None;
        std::optional<std::int64_t> n;
        const std::int64_t n_draw = 500 + static_cast<std::int64_t>(rng() % 20000);
        if (i % 5 != 4) n = n_draw;

        cards.push_back(CardBuilder("c-rnd-" + tag, grade, n, adj)
                            .effect(pop("pop-rnd-" + tag), std::move(contrast),
                                    outcome("rnd-y-" + tag, y_type), std::move(horizon),
                                    measure(m_type, s_rep), std::move(claim))
                            .done());
    }

    // --- frozen structural expectations ---
    out.bucket_count = 52;
    out.ablation_bucket_counts = {
        {"none", 52}, {"no_canonical", 54}, {"no_align_tau", 54}, {"weak_key", 51}};

    out.buckets = {
        {"t2dm|sglt2i|mace|fixed:6|binary|ratio",
         {"c-s1a#0", "c-s1b#0", "c-s1c#0"},
         {},
         "none",
         "c-s1a#0",
         {"c-s1a#0", "c-s1b#0"}},
        {"pop-dir|drug-dir|out-dir|fixed:5|binary|difference",
         {"c-s3a#0", "c-s3b#0"},
         {"directional", "interval"},
         "high",
         "c-s3b#0",
         {"c-s3a#0", "c-s3b#0"}},
        {"pop-int|drug-int|out-int|fixed:4|binary|difference",
         {"c-s4a#0", "c-s4b#0"},
         {"interval"},
         "medium",
         "c-s4a#0",
         {"c-s4a#0", "c-s4b#0"}},
        {"pop-het|drug-het|out-het|fixed:5|binary|difference",
         {"c-s5a#0", "c-s5b#0"},
         {"heterogeneity"},
         "low",
         "c-s5a#0",
         {"c-s5a#0", "c-s5b#0"}},
    };

    // --- frozen query verdicts ---
    auto& queries = out.queries;

    {
        FixtureQuery q{"do-worked-example", do_spec("sglt2i", "mace"), {}};
        q.expect = {expect({"executable", "mixed_mtype"}, kLn073, Interval{kLn058, kLn092})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-single-edge", do_spec("dapagliflozin", "hf-worsening-or-cv-death"),
                       {}};
        q.expect = {expect({"executable"}, kLn073, Interval{kLn060, kLn088})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-directional-conflict", do_spec("drug-dir", "out-dir"), {}};
        q.expect = {expect({"executable", "conflict"}, -0.25, Interval{-0.40, -0.10})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-interval-conflict", do_spec("drug-int", "out-int"), {}};
        q.expect = {expect({"executable", "conflict"}, 0.15, Interval{0.10, 0.20})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-heterogeneity", do_spec("drug-het", "out-het"), {}};
        q.expect = {expect({"executable", "heterogeneity"}, 0.5, Interval{-0.2, 1.2})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-missing-edge", do_spec("sglt2i", "out-dir"), {}};
        q.expect = {expect({"missing_edge"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"do-missing-field", {}, {}};
        q.spec.kind = QueryKind::Do;
        q.spec.x_id = "sglt2i";
        q.expect = {expect({"missing_field"})};
        queries.push_back(std::move(q));
    }

    {
        FixtureQuery q{"med-numeric", {}, {}};
        q.spec.kind = QueryKind::Med;
        q.spec.x_id = "med-x";
        q.spec.m_id = "med-m";
        q.spec.y_id = "med-y";
        q.expect = {expect({"executable"}, 0.8, Interval{0.5, 1.1}),
                    expect({"executable", "assumption_required"}, 0.6,
                           Interval{kNdeLo, kNdeHi}),
                    expect({"executable", "assumption_required"}, 0.2,
                           Interval{kNieLo, kNieHi})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"med-missing-path", {}, {}};
        q.spec.kind = QueryKind::Med;
        q.spec.x_id = "med2-x";
        q.spec.m_id = "med2-m";
        q.spec.y_id = "med2-y";
        q.expect = {expect({"missing_path"}), expect({"missing_path"}),
                    expect({"missing_path"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"med-ratio-legs", {}, {}};
        q.spec.kind = QueryKind::Med;
        q.spec.x_id = "med3-x";
        q.spec.m_id = "med3-m";
        q.spec.y_id = "med3-y";
        q.expect = {expect({"missing_edge"}),
                    expect({"missing_edge", "assumption_required"}),
                    expect({"assumption_required"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"med-mixed-legs", {}, {}};
        q.spec.kind = QueryKind::Med;
        q.spec.x_id = "med4-x";
        q.spec.m_id = "med4-m";
        q.spec.y_id = "med4-y";
        q.expect = {expect({"executable"}, 0.5, Interval{0.2, 0.8}),
                    expect({"assumption_required", "mixed_mtype"}),
                    expect({"assumption_required", "mixed_mtype"})};
        queries.push_back(std::move(q));
    }

    {
        FixtureQuery q{"joint-numeric", {}, {}};
        q.spec.kind = QueryKind::Joint;
        q.spec.x_id = "joint-x1";
        q.spec.x2_id = "joint-x2";
        q.spec.y_id = "joint-y";
        q.expect = {expect({"executable", "assumption_required"}, -0.5,
                           Interval{kJointLo, kJointHi})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"joint-mixed-family", {}, {}};
        q.spec.kind = QueryKind::Joint;
        q.spec.x_id = "joint2-x1";
        q.spec.x2_id = "joint2-x2";
        q.spec.y_id = "joint2-y";
        q.expect = {expect({"mixed_mtype"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"joint-missing-edge", {}, {}};
        q.spec.kind = QueryKind::Joint;
        q.spec.x_id = "joint3-x1";
        q.spec.x2_id = "joint3-x2";
        q.spec.y_id = "joint3-y";
        q.expect = {expect({"missing_edge"})};
        queries.push_back(std::move(q));
    }

    {
        FixtureQuery q{"cf-found", {}, {}};
        q.spec.kind = QueryKind::Cf;
        q.spec.x_id = "cf-x";
        q.spec.y_id = "cf-y";
        q.spec.context["population"] = "ckd";
        q.expect = {expect({"executable", "assumption_required"}, 0.3, Interval{0.1, 0.5})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"cf-wrong-population", {}, {}};
        q.spec.kind = QueryKind::Cf;
        q.spec.x_id = "cf-x";
        q.spec.y_id = "cf-y";
        q.spec.context["population"] = "hfpef";
        q.expect = {expect({"missing_edge"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"cf-no-population", {}, {}};
        q.spec.kind = QueryKind::Cf;
        q.spec.x_id = "cf-x";
        q.spec.y_id = "cf-y";
        q.expect = {expect({"missing_field"})};
        queries.push_back(std::move(q));
    }

    {
        FixtureQuery q{"cate-found", {}, {}};
        q.spec.kind = QueryKind::Cate;
        q.spec.x_id = "cate-x";
        q.spec.y_id = "cate-y";
        q.spec.subgroup = "elderly";
        q.expect = {expect({"executable"}, 0.2, Interval{0.05, 0.35})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"cate-no-subgroup-evidence", {}, {}};
        q.spec.kind = QueryKind::Cate;
        q.spec.x_id = "cate-x";
        q.spec.y_id = "cate-y";
        q.spec.subgroup = "pediatric";
        q.expect = {expect({"no_subgroup_evidence"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"cate-missing-edge", {}, {}};
        q.spec.kind = QueryKind::Cate;
        q.spec.x_id = "cate-x";
        q.spec.y_id = "cate-z";
        q.spec.subgroup = "elderly";
        q.expect = {expect({"missing_edge"})};
        queries.push_back(std::move(q));
    }

    {
        FixtureQuery q{"traj-sign-flip", {}, {}};
        q.spec.kind = QueryKind::Traj;
        q.spec.x_id = "traj-x";
        q.spec.y_id = "traj-y";
        q.spec.time_set = {fixed_bin(4), fixed_bin(6)};
        q.expect = {expect({"executable", "conflict"}, 0.2, Interval{0.1, 0.3}),
                    expect({"executable", "conflict"}, -0.2, Interval{-0.3, -0.1})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"traj-partial-coverage", {}, {}};
        q.spec.kind = QueryKind::Traj;
        q.spec.x_id = "traj2-x";
        q.spec.y_id = "traj2-y";
        q.spec.time_set = {fixed_bin(4), fixed_bin(6)};
        q.expect = {expect({"executable", "insufficient_time_coverage"}, 0.1,
                           Interval{0.05, 0.15}),
                    expect({"missing_edge", "insufficient_time_coverage"})};
        queries.push_back(std::move(q));
    }
    {
        FixtureQuery q{"traj-empty-times", {}, {}};
        q.spec.kind = QueryKind::Traj;
        q.spec.x_id = "traj-x";
        q.spec.y_id = "traj-y";
        q.expect = {expect({"missing_field"})};
        queries.push_back(std::move(q));
    }

    return out;
}

namespace {

using serde::json;

json constraints_to_json(const QueryConstraints& c) {
    json j = json::object();
    if (c.p_bucket) j["population"] = *c.p_bucket;
    if (c.c_type) j["contrast_type"] = to_string(*c.c_type);
    if (c.tau_class) j["tau"] = c.tau_class->encode();
    if (c.m_family) j["family"] = to_string(*c.m_family);
    return j;
}

json query_to_json(const FixtureQuery& q) {
    json j;
    j["name"] = q.name;
    j["kind"] = to_string(q.spec.kind);
    serde::put_opt(j, "x", q.spec.x_id);
    serde::put_opt(j, "x2", q.spec.x2_id);
    serde::put_opt(j, "m", q.spec.m_id);
    serde::put_opt(j, "y", q.spec.y_id);
    serde::put_opt(j, "subgroup", q.spec.subgroup);
    if (!q.spec.context.empty()) j["context"] = q.spec.context;
    if (!q.spec.time_set.empty()) {
        json times = json::array();
        for (const auto& tau : q.spec.time_set) times.push_back(tau.encode());
        j["times"] = std::move(times);
    }
    json constraints = constraints_to_json(q.spec.constraints);
    if (!constraints.empty()) j["constraints"] = std::move(constraints);

    json expect = json::array();
    for (const auto& e : q.expect) {
        json x;
        x["flags"] = e.flags;
        if (e.theta) x["theta"] = *e.theta;
        if (e.ci) x["ci"] = serde::interval_to_json(*e.ci);
        expect.push_back(std::move(x));
    }
    j["expect"] = std::move(expect);
    return j;
}

} // namespace

std::string manifest_to_json(const FixtureCorpus& corpus) {
    json j;
    j["seed"] = corpus.seed;
    j["cards"] = corpus.cards.size();
    j["bucket_count"] = corpus.bucket_count;
    j["ablation_bucket_counts"] = corpus.ablation_bucket_counts;

    json buckets = json::array();
    for (const auto& b : corpus.buckets) {
        json x;
        x["key"] = b.key;
        x["claims"] = b.claim_refs;
        x["conflict_types"] = b.conflict_types;
        x["severity"] = b.severity;
        x["default"] = b.default_ref;
        x["poolable"] = b.poolable_refs;
        buckets.push_back(std::move(x));
    }
    j["buckets"] = std::move(buckets);

    json queries = json::array();
    for (const auto& q : corpus.queries) queries.push_back(query_to_json(q));
    j["queries"] = std::move(queries);
    return j.dump(2) + "\n";
}

void emit_fixtures(std::uint64_t seed, const std::filesystem::path& out_dir) {
    const FixtureCorpus corpus = make_fixture_corpus(seed);

    std::filesystem::create_directories(out_dir / "cards");
    for (const auto& parsed : corpus.cards) {
        std::ofstream out(out_dir / "cards" / (parsed.card.card_id + ".json"),
                          std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write fixture card: " + parsed.card.card_id);
        out << card_to_json(parsed.card);
    }

    {
        std::ofstream out(out_dir / "config.json", std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write fixture config");
        out << build_config_to_json(corpus.config);
    }
    {
        std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write fixture manifest");
        out << manifest_to_json(corpus);
    }
}

} // namespace evatlas
