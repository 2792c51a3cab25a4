#include "boltspan/query.hpp"

#include <chrono>
#include <unordered_map>

#include "boltspan/search.hpp"

namespace boltspan {

namespace {

std::optional<QueryResult> run_query(const SparseGraph& graph, const Environment& env, const Configuration& start,
                                     const Configuration& goal, const QueryOptions& options, bool lazy) {
    const auto started = std::chrono::steady_clock::now();
    if (start.size() != graph.dimension() || goal.size() != graph.dimension()) {
        throw InputError("query: endpoint dimension does not match the roadmap");
    }
    if (!env.is_valid(start)) throw InputError("query: start configuration is not valid");
    if (!env.is_valid(goal)) throw InputError("query: goal configuration is not valid");

    const MotionValidator validator{options.motion_resolution};
    const Metric metric = graph.metric();
    const auto n = static_cast<std::uint32_t>(graph.num_vertices());
    const std::uint32_t start_node = n;
    const std::uint32_t goal_node = n + 1;

    std::vector<std::int8_t> vertex_ok;
    if (lazy) vertex_ok.assign(n, -1);
    auto usable = [&](VertexId v) {
        if (!lazy) return true;
        if (vertex_ok[v] < 0) vertex_ok[v] = env.is_valid(graph.vertex(v)) ? 1 : 0;
        return vertex_ok[v] == 1;
    };

    QueryResult result;
    auto attach = [&](const Configuration& q, std::vector<VertexId>& out) {
        for (VertexId v : graph.within_radius(q, options.delta)) {
            if (usable(v) && validator.check_motion(q, graph.vertex(v), env)) out.push_back(v);
        }
    };
    attach(start, result.start_attachments);
    attach(goal, result.goal_attachments);
    const bool direct = distance(start, goal, metric) <= options.delta && validator.check_motion(start, goal, env);

    std::unordered_map<VertexId, double> goal_links;
    for (VertexId v : result.goal_attachments) goal_links.emplace(v, distance(graph.vertex(v), goal, metric));

    std::unordered_map<std::uint64_t, bool> edge_ok;
    auto edge_usable = [&](VertexId a, VertexId b) {
        if (!lazy) return true;
        const std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
        auto [it, fresh] = edge_ok.try_emplace(key, false);
        if (fresh) it->second = usable(a) && usable(b) && validator.check_motion(graph.vertex(a), graph.vertex(b), env);
        return it->second;
    };

    auto position = [&](std::uint32_t u) -> const Configuration& {
        return u == start_node ? start : u == goal_node ? goal : graph.vertex(u);
    };
    auto found = astar_search(
        n + 2, start_node, goal_node,
        [&](std::uint32_t u, auto&& visit) {
            if (u == goal_node) return;
            if (u == start_node) {
                if (direct) visit(goal_node, distance(start, goal, metric));
                for (VertexId v : result.start_attachments) visit(v, distance(start, graph.vertex(v), metric));
                return;
            }
            for (VertexId v : graph.neighbors(u)) {
                if (edge_usable(u, v)) visit(v, graph.edge_length(u, v));
            }
            if (auto it = goal_links.find(u); it != goal_links.end()) visit(goal_node, it->second);
        },
        [&](std::uint32_t u) { return distance(position(u), goal, metric); });
    if (!found) return std::nullopt;

    result.expanded = found->expanded;
    for (std::uint32_t u : found->vertices) {
        result.path.push_back(position(u));
        if (u < n) result.roadmap_path.push_back(u);
    }
    result.direct = result.roadmap_path.empty();
    result.length = path_length(result.path, metric);
    result.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return result;
}

}  // namespace

std::optional<QueryResult> plan(const SparseGraph& graph, const Environment& env, const Configuration& start,
                                const Configuration& goal, const QueryOptions& options) {
    return run_query(graph, env, start, goal, options, false);
}

std::optional<QueryResult> plan_with_repair(const SparseGraph& graph, const Environment& env,
                                            const Configuration& start, const Configuration& goal,
                                            const QueryOptions& options) {
    return run_query(graph, env, start, goal, options, true);
}

std::vector<Configuration> smooth(std::vector<Configuration> path, const Environment& env,
                                  const MotionValidator& validator, Metric m) {
    return shortcut_path(std::move(path), env, validator, m);
}

}  // namespace boltspan
