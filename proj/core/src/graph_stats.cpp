#include "evatlas/graph_stats.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace evatlas {

std::string_view to_string(NodeRole v) {
    switch (v) {
        case NodeRole::PureIntervention: return "pure_intervention";
        case NodeRole::PureOutcome: return "pure_outcome";
        case NodeRole::Mediator: return "mediator";
    }
    return "?";
}

namespace {

std::vector<std::pair<std::string, std::string>> unique_pairs(const Atlas& atlas) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& edge : atlas.edges) seen.emplace(edge.x_id(), edge.y_id());
    return {seen.begin(), seen.end()};
}

struct Indexed {
    std::vector<std::string> names;  // sorted, index = node id
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> undirected;
};

Indexed index_graph(const std::vector<std::pair<std::string, std::string>>& edges) {
    std::set<std::string> nodes;
    for (const auto& [x, y] : edges) {
        nodes.insert(x);
        nodes.insert(y);
    }
    Indexed g;
    g.names.assign(nodes.begin(), nodes.end());
    auto id = [&](const std::string& name) {
        return static_cast<int>(std::lower_bound(g.names.begin(), g.names.end(), name) -
                                g.names.begin());
    };
    g.out.resize(g.names.size());
    g.undirected.resize(g.names.size());
    for (const auto& [x, y] : edges) {
        int a = id(x), b = id(y);
        g.out[a].push_back(b);
        g.undirected[a].push_back(b);
        if (a != b) g.undirected[b].push_back(a);
    }
    return g;
}

} // namespace

std::map<std::string, NodeRole> node_roles(const Atlas& atlas) {
    std::set<std::string> sources, targets;
    for (const auto& edge : atlas.edges) {
        sources.insert(edge.x_id());
        targets.insert(edge.y_id());
    }
    std::map<std::string, NodeRole> roles;
    for (const auto& s : sources)
        roles[s] = targets.count(s) ? NodeRole::Mediator : NodeRole::PureIntervention;
    for (const auto& t : targets)
        if (!sources.count(t)) roles[t] = NodeRole::PureOutcome;
    return roles;
}

HubRanking hub_ranking(const Atlas& atlas, std::size_t top_k) {
    std::map<std::string, std::set<std::string>> outs, ins;
    for (const auto& edge : atlas.edges) {
        outs[edge.x_id()].insert(edge.y_id());
        ins[edge.y_id()].insert(edge.x_id());
    }

    auto rank = [top_k](const std::map<std::string, std::set<std::string>>& degrees) {
        std::vector<std::pair<std::string, std::size_t>> out;
        out.reserve(degrees.size());
        for (const auto& [node, opposite] : degrees) out.emplace_back(node, opposite.size());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;  // ties by node token
        });
        if (out.size() > top_k) out.resize(top_k);
        return out;
    };

    return HubRanking{rank(outs), rank(ins)};
}

GraphStats graph_stats_from_pairs(
    const std::vector<std::pair<std::string, std::string>>& edges) {
    GraphStats stats;
    std::set<std::pair<std::string, std::string>> unique(edges.begin(), edges.end());
    Indexed g = index_graph({unique.begin(), unique.end()});
    const std::size_t n = g.names.size();

    stats.node_count = n;
    stats.unique_edge_count = unique.size();

    std::set<std::string> sources, targets;
    for (const auto& [x, y] : unique) {
        sources.insert(x);
        targets.insert(y);
    }
    for (const auto& name : g.names) {
        bool src = sources.count(name), tgt = targets.count(name);
        if (src && tgt)
            ++stats.mediator_count;
        else if (src)
            ++stats.pure_intervention_count;
        else
            ++stats.pure_outcome_count;
    }

    // Weakly connected components over the undirected projection.
    std::vector<int> component(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (component[start] != -1) continue;
        std::size_t size = 0;
        std::deque<int> frontier{static_cast<int>(start)};
        component[start] = static_cast<int>(start);
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.pop_front();
            ++size;
            for (int w : g.undirected[static_cast<std::size_t>(v)])
                if (component[static_cast<std::size_t>(w)] == -1) {
                    component[static_cast<std::size_t>(w)] = static_cast<int>(start);
                    frontier.push_back(w);
                }
        }
        ++stats.wcc_count;
        stats.largest_wcc_size = std::max(stats.largest_wcc_size, size);
    }

    // Directed shortest paths by BFS from every node; self-pairs excluded.
    std::size_t total_length = 0;
    std::vector<int> dist(n);
    for (std::size_t start = 0; start < n; ++start) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[start] = 0;
        std::deque<int> frontier{static_cast<int>(start)};
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.pop_front();
            for (int w : g.out[static_cast<std::size_t>(v)])
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    frontier.push_back(w);
                }
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (v == start || dist[v] <= 0) continue;
            ++stats.reachable_pair_count;
            total_length += static_cast<std::size_t>(dist[v]);
            stats.diameter = std::max(stats.diameter, static_cast<std::size_t>(dist[v]));
        }
    }
    if (stats.reachable_pair_count > 0)
        stats.avg_path_length =
            static_cast<double>(total_length) / static_cast<double>(stats.reachable_pair_count);

    if (n > 1)
        stats.density = static_cast<double>(stats.unique_edge_count) /
                        (static_cast<double>(n) * static_cast<double>(n - 1));
    return stats;
}

GraphStats graph_stats(const Atlas& atlas) {
    return graph_stats_from_pairs(unique_pairs(atlas));
}

} // namespace evatlas
