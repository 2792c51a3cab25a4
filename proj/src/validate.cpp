#include "boltspan/validate.hpp"

#include <cstdio>
#include <queue>
#include <vector>

#include "boltspan/bench.hpp"

namespace boltspan {

ValidationReport validate_roadmap(const Roadmap& roadmap, const Environment& env, std::size_t queries,
                                  std::uint64_t seed, double motion_resolution) {
    const SparseGraph& g = roadmap.graph;
    const RoadmapHeader& h = roadmap.header;
    if (h.dimension != env.dimension())
        throw InputError("roadmap dimension " + std::to_string(h.dimension) + " does not match environment dimension " +
                         std::to_string(env.dimension()));
    ValidationReport r;
    r.vertices = g.num_vertices();
    r.edges = g.num_edges();
    const MotionValidator validator{motion_resolution};
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (!env.is_valid(g.vertex(v))) ++r.invalid_vertices;
    g.for_each_edge([&](VertexId a, VertexId b, double length, EdgeKind) {
        if (!validator.check_motion(g.vertex(a), g.vertex(b), env)) ++r.invalid_edges;
        if (length != distance(g.vertex(a), g.vertex(b), h.metric)) ++r.length_mismatches;
    });

    // Label components by BFS; two vertices share a label iff the index agrees.
    std::vector<std::size_t> label(g.num_vertices(), SIZE_MAX);
    std::size_t next = 0;
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
        if (label[s] != SIZE_MAX) continue;
        std::queue<VertexId> open;
        open.push(s);
        label[s] = next;
        while (!open.empty()) {
            VertexId u = open.front();
            open.pop();
            if (!g.same_component(u, s)) ++r.component_mismatches;
            for (VertexId w : g.neighbors(u))
                if (label[w] == SIZE_MAX) {
                    label[w] = next;
                    open.push(w);
                }
        }
        ++next;
    }
    if (next != g.component_count()) ++r.component_mismatches;

    if (queries > 0) {
        BuildParams params;
        params.dimension = static_cast<int>(h.dimension);
        params.metric = h.metric;
        params.delta = h.delta;
        params.dense_delta = h.dense_delta;
        params.motion_resolution = motion_resolution;
        const GridOracle oracle = default_oracle(params.dimension, h.metric);
        const QuerySet set = make_queries(env, queries, seed, h.metric, oracle);
        BenchRecord record;
        evaluate_queries(g, env, params, h.stretch, set, oracle, record);
        r.queries = set.pairs.size();
        r.failed_plans = record.failed_plans;
        r.stretch_violations = record.stretch_violations;
        r.max_ratio = record.quality_ratio_max;
    }
    return r;
}

std::string to_string(const ValidationReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "vertices=%zu edges=%zu\n"
                  "invalid_vertices=%zu invalid_edges=%zu length_mismatches=%zu component_mismatches=%zu\n"
                  "queries=%zu failed_plans=%zu stretch_violations=%zu max_ratio=%.4f\n"
                  "violations=%zu\n",
                  r.vertices, r.edges, r.invalid_vertices, r.invalid_edges, r.length_mismatches,
                  r.component_mismatches, r.queries, r.failed_plans, r.stretch_violations, r.max_ratio,
                  r.violations());
    return buf;
}

}  // namespace boltspan
