#include "evatlas/query.hpp"

#include "evatlas/canonicalize.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace evatlas {

std::string_view to_string(Flag v) {
    switch (v) {
        case Flag::Executable: return "executable";
        case Flag::MissingEdge: return "missing_edge";
        case Flag::MissingPath: return "missing_path";
        case Flag::MissingField: return "missing_field";
        case Flag::MixedMtype: return "mixed_mtype";
        case Flag::Heterogeneity: return "heterogeneity";
        case Flag::Conflict: return "conflict";
        case Flag::AssumptionRequired: return "assumption_required";
        case Flag::NoSubgroupEvidence: return "no_subgroup_evidence";
        case Flag::InsufficientTimeCoverage: return "insufficient_time_coverage";
    }
    return "?";
}

std::optional<Flag> parse_flag(std::string_view token) {
    for (Flag f : {Flag::Executable, Flag::MissingEdge, Flag::MissingPath, Flag::MissingField,
                   Flag::MixedMtype, Flag::Heterogeneity, Flag::Conflict,
                   Flag::AssumptionRequired, Flag::NoSubgroupEvidence,
                   Flag::InsufficientTimeCoverage})
        if (token == to_string(f)) return f;
    return std::nullopt;
}

std::string_view to_string(QueryKind v) {
    switch (v) {
        case QueryKind::Do: return "do";
        case QueryKind::Med: return "med";
        case QueryKind::Joint: return "joint";
        case QueryKind::Cf: return "cf";
        case QueryKind::Cate: return "cate";
        case QueryKind::Traj: return "traj";
    }
    return "?";
}

std::optional<QueryKind> parse_query_kind(std::string_view token) {
    for (QueryKind k : {QueryKind::Do, QueryKind::Med, QueryKind::Joint, QueryKind::Cf,
                        QueryKind::Cate, QueryKind::Traj})
        if (token == to_string(k)) return k;
    return std::nullopt;
}

bool match_key(const BucketKey& key, const std::string& x, const std::string& y,
               const QueryConstraints& constraints) {
    if (key.x_id != x || key.y_id != y) return false;
    if (constraints.p_bucket && key.p_bucket != *constraints.p_bucket) return false;
    if (constraints.c_type && key.c_type != *constraints.c_type) return false;
    if (constraints.tau_class && !(key.tau_class == *constraints.tau_class)) return false;
    if (constraints.m_family && key.m_family != *constraints.m_family) return false;
    return true;
}

const AtlasEdge* resolve_edge(const Atlas& atlas, const std::string& x, const std::string& y,
                              const QueryConstraints& constraints) {
    const AtlasEdge* best = nullptr;
    for (const auto& edge : atlas.edges) {
        if (!match_key(edge.key, x, y, constraints)) continue;
        if (best == nullptr) {
            best = &edge;
            continue;
        }
        const QualityBreakdown& current = edge.quality[edge.default_index];
        const QualityBreakdown& incumbent = best->quality[best->default_index];
        if (quality_less(incumbent, current) ||
            (!quality_less(current, incumbent) &&
             edge.key.encode() < best->key.encode()))
            best = &edge;
    }
    return best;
}

namespace {

int interval_direction(const std::optional<Interval>& ci) {
    if (!ci) return 0;
    if (ci->lower > 0.0) return 1;
    if (ci->upper < 0.0) return -1;
    return 0;
}

bool has_mixed_mtype(const AtlasEdge& edge) {
    const std::string& first = edge.claims.front().estimand.measure.m_type;
    for (const auto& claim : edge.claims)
        if (claim.estimand.measure.m_type != first) return true;
    return false;
}

AnswerObject answer_from_edge(const AtlasEdge& edge) {
    AnswerObject ans;
    const CanonicalClaim& kernel = edge.default_kernel();
    ans.estimand = kernel.estimand;
    ans.theta_hat = kernel.theta_canon;
    ans.ci = kernel.ci_canon;
    ans.provenance = kernel.provenance;
    ans.conflict = edge.conflict;
    ans.flags.insert(Flag::Executable);
    if (edge.conflict.has(ConflictType::Directional) ||
        edge.conflict.has(ConflictType::Interval))
        ans.flags.insert(Flag::Conflict);
    if (edge.conflict.has(ConflictType::Heterogeneity)) ans.flags.insert(Flag::Heterogeneity);
    if (has_mixed_mtype(edge)) ans.flags.insert(Flag::MixedMtype);
    ans.witness_keys.push_back(edge.key);
    return ans;
}

AnswerObject flagged(std::initializer_list<Flag> flags) {
    AnswerObject ans;
    ans.flags = flags;
    return ans;
}

// Standard error implied by a central interval at the atlas coverage level.
std::optional<double> se_from_answer(const AnswerObject& ans, double z) {
    if (!ans.ci) return std::nullopt;
    return ans.ci->width() / (2.0 * z);
}

// Blocking flags of a non-numeric sub-answer, propagated to the combination.
void copy_blocking_flags(const AnswerObject& from, AnswerObject& to) {
    for (Flag f : {Flag::MissingEdge, Flag::MissingPath, Flag::MissingField,
                   Flag::MixedMtype, Flag::AssumptionRequired})
        if (from.flags.count(f)) to.flags.insert(f);
}

} // namespace

AnswerObject q_do(const Atlas& atlas, const QuerySpec& spec) {
    if (!spec.x_id || !spec.y_id) return flagged({Flag::MissingField});
    const AtlasEdge* edge = resolve_edge(atlas, *spec.x_id, *spec.y_id, spec.constraints);
    if (edge == nullptr) return flagged({Flag::MissingEdge});
    return answer_from_edge(*edge);
}

MediationAnswer q_med(const Atlas& atlas, const QuerySpec& spec) {
    MediationAnswer out;
    if (!spec.x_id || !spec.m_id || !spec.y_id) {
        out.total = flagged({Flag::MissingField});
        out.direct = flagged({Flag::MissingField});
        out.indirect = flagged({Flag::MissingField});
        return out;
    }

    const double z = atlas.config.z();
    const AtlasEdge* into_mediator = resolve_edge(atlas, *spec.x_id, *spec.m_id, spec.constraints);
    const AtlasEdge* out_of_mediator =
        resolve_edge(atlas, *spec.m_id, *spec.y_id, spec.constraints);

    // Total effect comes from the direct (X, Y) edge regardless of the legs.
    const AtlasEdge* direct_edge = resolve_edge(atlas, *spec.x_id, *spec.y_id, spec.constraints);
    out.total = direct_edge ? answer_from_edge(*direct_edge) : flagged({Flag::MissingEdge});

    if (into_mediator == nullptr || out_of_mediator == nullptr) {
        out.indirect = flagged({Flag::MissingPath});
        out.direct = flagged({Flag::MissingPath});
        out.total = flagged({Flag::MissingPath});
        return out;
    }

    AnswerObject leg1 = answer_from_edge(*into_mediator);
    AnswerObject leg2 = answer_from_edge(*out_of_mediator);
    const MeasureFamily f1 = into_mediator->key.m_family;
    const MeasureFamily f2 = out_of_mediator->key.m_family;

    out.indirect.witness_keys = {into_mediator->key, out_of_mediator->key};
    out.indirect.flags.insert(Flag::AssumptionRequired);
    if (f1 == MeasureFamily::Difference && f2 == MeasureFamily::Difference) {
        // Product of coefficients, large-sample standard error.
        out.indirect.theta_hat = *leg1.theta_hat * *leg2.theta_hat;
        auto se1 = se_from_answer(leg1, z);
        auto se2 = se_from_answer(leg2, z);
        if (se1 && se2) {
            double se = std::sqrt(*leg2.theta_hat * *leg2.theta_hat * *se1 * *se1 +
                                  *leg1.theta_hat * *leg1.theta_hat * *se2 * *se2);
            out.indirect.ci = derive_ci_from_se(*out.indirect.theta_hat, se, z);
        }
        out.indirect.flags.insert(Flag::Executable);
        CanonicalEstimand composite = into_mediator->default_kernel().estimand;
        composite.outcome = out_of_mediator->default_kernel().estimand.outcome;
        composite.horizon = out_of_mediator->default_kernel().estimand.horizon;
        composite.measure = out_of_mediator->default_kernel().estimand.measure;
        out.indirect.estimand = composite;
    } else if (f1 != f2) {
        out.indirect.flags.insert(Flag::MixedMtype);
    }
    // Same-family ratio legs: assumption_required alone, no numeric product.

    if (out.total.theta_hat && out.indirect.theta_hat) {
        out.direct.theta_hat = *out.total.theta_hat - *out.indirect.theta_hat;
        auto se_total = se_from_answer(out.total, z);
        auto se_indirect = se_from_answer(out.indirect, z);
        if (se_total && se_indirect) {
            double se = std::sqrt(*se_total * *se_total + *se_indirect * *se_indirect);
            out.direct.ci = derive_ci_from_se(*out.direct.theta_hat, se, z);
        }
        out.direct.flags.insert(Flag::Executable);
        out.direct.flags.insert(Flag::AssumptionRequired);
        out.direct.estimand = out.total.estimand;
        out.direct.witness_keys = out.total.witness_keys;
        out.direct.witness_keys.insert(out.direct.witness_keys.end(),
                                       out.indirect.witness_keys.begin(),
                                       out.indirect.witness_keys.end());
    } else {
        if (!out.total.theta_hat) copy_blocking_flags(out.total, out.direct);
        if (!out.indirect.theta_hat) copy_blocking_flags(out.indirect, out.direct);
    }
    return out;
}

AnswerObject q_joint(const Atlas& atlas, const QuerySpec& spec) {
    if (!spec.x_id || !spec.x2_id || !spec.y_id) return flagged({Flag::MissingField});

    const AtlasEdge* first = resolve_edge(atlas, *spec.x_id, *spec.y_id, spec.constraints);
    const AtlasEdge* second = resolve_edge(atlas, *spec.x2_id, *spec.y_id, spec.constraints);
    if (first == nullptr || second == nullptr) return flagged({Flag::MissingEdge});

    if (first->key.m_family != second->key.m_family) {
        AnswerObject ans = flagged({Flag::MixedMtype});
        ans.witness_keys = {first->key, second->key};
        return ans;
    }

    const double z = atlas.config.z();
    AnswerObject a = answer_from_edge(*first);
    AnswerObject b = answer_from_edge(*second);

    AnswerObject ans;
    ans.theta_hat = *a.theta_hat + *b.theta_hat;  // additive on the canonical scale
    auto se1 = se_from_answer(a, z);
    auto se2 = se_from_answer(b, z);
    if (se1 && se2)
        ans.ci = derive_ci_from_se(*ans.theta_hat, std::sqrt(*se1 * *se1 + *se2 * *se2), z);
    ans.flags.insert(Flag::Executable);
    ans.flags.insert(Flag::AssumptionRequired);
    CanonicalEstimand composite = first->default_kernel().estimand;
    if (first->default_kernel().estimand.measure.m_type !=
        second->default_kernel().estimand.measure.m_type)
        composite.measure.m_type = std::string(to_string(first->key.m_family));
    ans.estimand = composite;
    ans.witness_keys = {first->key, second->key};
    return ans;
}

AnswerObject q_cf(const Atlas& atlas, const QuerySpec& spec) {
    if (!spec.x_id || !spec.y_id) return flagged({Flag::MissingField});
    auto population = spec.context.find("population");
    if (population == spec.context.end() || population->second.empty())
        return flagged({Flag::MissingField});

    QueryConstraints constraints = spec.constraints;
    constraints.p_bucket = normalize_token(population->second);
    const AtlasEdge* edge = resolve_edge(atlas, *spec.x_id, *spec.y_id, constraints);
    if (edge == nullptr) return flagged({Flag::MissingEdge});

    // Individual-level reading of a population-level kernel: always an
    // extrapolation, never silently.
    AnswerObject ans = answer_from_edge(*edge);
    ans.flags.insert(Flag::AssumptionRequired);
    return ans;
}

AnswerObject q_cate(const Atlas& atlas, const QuerySpec& spec) {
    if (!spec.x_id || !spec.y_id || !spec.subgroup || spec.subgroup->empty())
        return flagged({Flag::MissingField});

    QueryConstraints constraints = spec.constraints;
    constraints.p_bucket = normalize_token(*spec.subgroup);
    const AtlasEdge* edge = resolve_edge(atlas, *spec.x_id, *spec.y_id, constraints);
    if (edge != nullptr) return answer_from_edge(*edge);

    // Distinguish "no such relation" from "relation known, subgroup missing".
    QueryConstraints any_population = spec.constraints;
    any_population.p_bucket.reset();
    if (resolve_edge(atlas, *spec.x_id, *spec.y_id, any_population) != nullptr)
        return flagged({Flag::NoSubgroupEvidence});
    return flagged({Flag::MissingEdge});
}

std::vector<TrajectoryPoint> q_traj(const Atlas& atlas, const QuerySpec& spec) {
    std::vector<TrajectoryPoint> out;
    if (!spec.x_id || !spec.y_id || spec.time_set.empty()) {
        out.push_back({CanonicalHorizonClass{}, flagged({Flag::MissingField})});
        return out;
    }

    // Requested classes, first occurrence order, duplicates dropped.
    std::vector<CanonicalHorizonClass> taus;
    for (const auto& tau : spec.time_set)
        if (std::find(taus.begin(), taus.end(), tau) == taus.end()) taus.push_back(tau);

    bool full_coverage = true;
    for (const auto& tau : taus) {
        QueryConstraints constraints = spec.constraints;
        constraints.tau_class = tau;
        const AtlasEdge* edge = resolve_edge(atlas, *spec.x_id, *spec.y_id, constraints);
        if (edge == nullptr) {
            full_coverage = false;
            out.push_back({tau, flagged({Flag::MissingEdge})});
        } else {
            out.push_back({tau, answer_from_edge(*edge)});
        }
    }

    if (!full_coverage)
        for (auto& point : out) point.answer.flags.insert(Flag::InsufficientTimeCoverage);

    // Decisive disagreement across time points taints both answers involved.
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out[i].answer.executable()) continue;
        int di = interval_direction(out[i].answer.ci);
        if (di == 0) continue;
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (!out[j].answer.executable()) continue;
            int dj = interval_direction(out[j].answer.ci);
            if (di * dj == -1) {
                out[i].answer.flags.insert(Flag::Conflict);
                out[j].answer.flags.insert(Flag::Conflict);
            }
        }
    }
    return out;
}

} // namespace evatlas
