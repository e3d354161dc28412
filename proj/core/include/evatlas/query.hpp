#pragma once

// Typed causal queries over a compiled atlas. Answers never guess: an answer
// either carries a numeric estimate from an existing edge (plus the edge's
// conflict annotation) or an explicit flag explaining what was missing.
// Composite queries (mediation, joint) combine default kernels and always
// carry assumption_required; their witness keys list every edge used.

#include "evatlas/atlas.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evatlas {

enum class Flag {
    Executable,
    MissingEdge,
    MissingPath,
    MissingField,
    MixedMtype,
    Heterogeneity,
    Conflict,
    AssumptionRequired,
    NoSubgroupEvidence,
    InsufficientTimeCoverage,
};

std::string_view to_string(Flag v);
std::optional<Flag> parse_flag(std::string_view token);

enum class QueryKind { Do, Med, Joint, Cf, Cate, Traj };
std::string_view to_string(QueryKind v);
std::optional<QueryKind> parse_query_kind(std::string_view token);

struct QueryConstraints {
    std::optional<std::string> p_bucket;
    std::optional<ContrastType> c_type;
    std::optional<CanonicalHorizonClass> tau_class;
    std::optional<MeasureFamily> m_family;

    bool operator==(const QueryConstraints&) const = default;
};

struct QuerySpec {
    QueryKind kind = QueryKind::Do;
    std::optional<std::string> x_id;
    std::optional<std::string> x2_id;  // joint only
    std::optional<std::string> m_id;   // mediation only
    std::optional<std::string> y_id;
    QueryConstraints constraints;
    std::optional<std::string> subgroup;          // cate
    std::map<std::string, std::string> context;   // cf; needs "population"
    std::vector<CanonicalHorizonClass> time_set;  // traj
};

struct AnswerObject {
    std::optional<CanonicalEstimand> estimand;
    std::optional<double> theta_hat;
    std::optional<Interval> ci;
    std::optional<Provenance> provenance;
    std::optional<ConflictAnnotation> conflict;
    std::set<Flag> flags;
    std::vector<BucketKey> witness_keys;

    bool executable() const { return flags.count(Flag::Executable) > 0; }
};

struct MediationAnswer {
    AnswerObject total;     // X -> Y direct edge
    AnswerObject direct;    // total minus indirect
    AnswerObject indirect;  // product of the two legs
};

struct TrajectoryPoint {
    CanonicalHorizonClass tau;
    AnswerObject answer;
};

bool match_key(const BucketKey& key, const std::string& x, const std::string& y,
               const QueryConstraints& constraints);

// Best edge for (x, y) under the constraints: maximal default-kernel quality
// tuple, exact ties broken by key encoding.
const AtlasEdge* resolve_edge(const Atlas& atlas, const std::string& x, const std::string& y,
                              const QueryConstraints& constraints);

AnswerObject q_do(const Atlas& atlas, const QuerySpec& spec);
MediationAnswer q_med(const Atlas& atlas, const QuerySpec& spec);
AnswerObject q_joint(const Atlas& atlas, const QuerySpec& spec);
AnswerObject q_cf(const Atlas& atlas, const QuerySpec& spec);
AnswerObject q_cate(const Atlas& atlas, const QuerySpec& spec);
std::vector<TrajectoryPoint> q_traj(const Atlas& atlas, const QuerySpec& spec);

} // namespace evatlas
