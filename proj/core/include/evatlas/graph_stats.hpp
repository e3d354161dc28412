#pragma once

// Structural views of the atlas as a directed simple graph over node tokens
// (parallel edges collapse to unique source-target pairs): node roles, hub
// rankings by distinct-neighbour degree, connectivity and path statistics.

#include "evatlas/atlas.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace evatlas {

enum class NodeRole { PureIntervention, PureOutcome, Mediator };
std::string_view to_string(NodeRole v);

std::map<std::string, NodeRole> node_roles(const Atlas& atlas);

struct HubRanking {
    // (node, distinct opposite endpoints), degree descending, ties by token.
    std::vector<std::pair<std::string, std::size_t>> interventions;
    std::vector<std::pair<std::string, std::size_t>> outcomes;
};

HubRanking hub_ranking(const Atlas& atlas, std::size_t top_k);

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t unique_edge_count = 0;  // distinct source-target pairs
    std::size_t pure_intervention_count = 0;
    std::size_t pure_outcome_count = 0;
    std::size_t mediator_count = 0;
    std::size_t wcc_count = 0;          // weakly connected components
    std::size_t largest_wcc_size = 0;
    std::size_t reachable_pair_count = 0;  // ordered pairs of distinct nodes
    double avg_path_length = 0.0;          // mean shortest directed path; 0 if none
    std::size_t diameter = 0;              // max finite shortest directed path
    double density = 0.0;                  // unique edges / n(n-1); 0 for n <= 1

    bool operator==(const GraphStats&) const = default;
};

GraphStats graph_stats(const Atlas& atlas);

// Same statistics over an explicit pair list (the atlas overload reduces to
// this after deduplication).
GraphStats graph_stats_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& edges);

} // namespace evatlas
