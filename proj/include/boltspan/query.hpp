#pragma once

// Start/goal queries over a finished roadmap.

#include <optional>
#include <vector>

#include "boltspan/graph.hpp"

namespace boltspan {

struct QueryOptions {
    double delta = 6.93;  // attachment radius
    double motion_resolution = 0.1;
};

struct QueryResult {
    std::vector<Configuration> path;     // start, roadmap states..., goal
    std::vector<VertexId> roadmap_path;  // roadmap vertices along the path
    double length = 0.0;
    std::size_t expanded = 0;
    std::vector<VertexId> start_attachments;
    std::vector<VertexId> goal_attachments;
    bool direct = false;  // start and goal joined without the roadmap
    double elapsed_ms = 0.0;
};

/// Attaches start and goal to every visible vertex within delta and runs A*.
/// Returns nullopt when there is no path; throws InputError when an
/// endpoint is invalid. Does not modify the graph.
[[nodiscard]] std::optional<QueryResult> plan(const SparseGraph& graph, const Environment& env,
                                              const Configuration& start, const Configuration& goal,
                                              const QueryOptions& options);

/// As plan, but every roadmap edge is checked against `env` the first time
/// the search relaxes it (cached for the query) and vertices that are no
/// longer valid are ignored.
[[nodiscard]] std::optional<QueryResult> plan_with_repair(const SparseGraph& graph, const Environment& env,
                                                          const Configuration& start, const Configuration& goal,
                                                          const QueryOptions& options);

/// Shortcut smoothing of a query path.
[[nodiscard]] std::vector<Configuration> smooth(std::vector<Configuration> path, const Environment& env,
                                                const MotionValidator& validator, Metric m);

}  // namespace boltspan
