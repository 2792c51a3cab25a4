#pragma once

// A* over the roadmap. The generic routine is shared with the query layer,
// which searches an overlay of the roadmap plus temporary endpoint nodes.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "boltspan/graph.hpp"

namespace boltspan {

struct GraphPath {
    std::vector<VertexId> vertices;
    double length = 0.0;
    std::size_t expanded = 0;
};

namespace detail {

struct OpenEntry {
    double f;
    double g;
    std::uint32_t node;
};

// Lowest f first; among equal f prefer the deeper node, then the lower id.
struct OpenOrder {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const noexcept {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.node > b.node;
    }
};

}  // namespace detail

/// A* over nodes [0, node_count). `for_each_neighbor(u, visit)` must call
/// visit(v, weight) for every outgoing edge; `heuristic(u)` must be
/// admissible. Nodes whose f exceeds `bound` are pruned.
template <class ForEachNeighbor, class Heuristic>
std::optional<GraphPath> astar_search(std::size_t node_count, std::uint32_t start, std::uint32_t goal,
                                      ForEachNeighbor&& for_each_neighbor, Heuristic&& heuristic,
                                      double bound = std::numeric_limits<double>::infinity()) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<double> g(node_count, kInf);
    std::vector<std::uint32_t> parent(node_count, kNone);
    std::vector<bool> closed(node_count, false);
    std::priority_queue<detail::OpenEntry, std::vector<detail::OpenEntry>, detail::OpenOrder> open;

    g[start] = 0.0;
    open.push({heuristic(start), 0.0, start});
    std::size_t expanded = 0;
    while (!open.empty()) {
        const auto entry = open.top();
        open.pop();
        const std::uint32_t u = entry.node;
        if (closed[u] || entry.g != g[u]) continue;
        closed[u] = true;
        ++expanded;
        if (u == goal) {
            GraphPath path;
            path.length = g[u];
            path.expanded = expanded;
            for (std::uint32_t v = goal; v != kNone; v = parent[v]) path.vertices.push_back(v);
            std::reverse(path.vertices.begin(), path.vertices.end());
            return path;
        }
        for_each_neighbor(u, [&](std::uint32_t v, double weight) {
            const double candidate = g[u] + weight;
            if (!(candidate < g[v])) return;
            const double f = candidate + heuristic(v);
            if (f > bound) return;
            g[v] = candidate;
            parent[v] = u;
            closed[v] = false;
            open.push({f, candidate, v});
        });
    }
    return std::nullopt;
}

/// Shortest path between two roadmap vertices using cached edge lengths and
/// the metric distance to `to` as heuristic.
[[nodiscard]] std::optional<GraphPath> graph_astar(const SparseGraph& graph, VertexId from, VertexId to,
                                                   Metric metric);

/// As graph_astar, but gives up on paths longer than `bound`.
[[nodiscard]] std::optional<GraphPath> graph_astar_bounded(const SparseGraph& graph, VertexId from,
                                                           VertexId to, double bound);

}  // namespace boltspan
