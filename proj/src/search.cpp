#include "boltspan/search.hpp"

#include <algorithm>

namespace boltspan {

namespace {

std::optional<GraphPath> run(const SparseGraph& graph, VertexId from, VertexId to, Metric metric, double bound) {
    if (from >= graph.num_vertices() || to >= graph.num_vertices()) return std::nullopt;
    const Configuration& target = graph.vertex(to);
    return astar_search(
        graph.num_vertices(), from, to,
        [&](std::uint32_t u, auto&& visit) {
            for (VertexId v : graph.neighbors(u)) {
                visit(v, metric == graph.metric() ? graph.edge_length(u, v)
                                                  : distance(graph.vertex(u), graph.vertex(v), metric));
            }
        },
        [&](std::uint32_t u) { return distance(graph.vertex(u), target, metric); }, bound);
}

}  // namespace

std::optional<GraphPath> graph_astar(const SparseGraph& graph, VertexId from, VertexId to, Metric metric) {
    return run(graph, from, to, metric, std::numeric_limits<double>::infinity());
}

std::optional<GraphPath> graph_astar_bounded(const SparseGraph& graph, VertexId from, VertexId to, double bound) {
    return run(graph, from, to, graph.metric(), bound);
}

}  // namespace boltspan
