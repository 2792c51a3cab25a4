#include <queue>
#include <random>

#include "boltspan/graph.hpp"
#include "boltspan/search.hpp"
#include "doctest.h"

using namespace boltspan;

namespace {

SparseGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m, Metric metric) {
    SparseGraph g(2, metric, 5.0);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (std::size_t i = 0; i < n; ++i) g.add_vertex({u(rng), u(rng)}, VertexKind::Coverage);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < m; ++k) g.add_edge(pick(rng), pick(rng), EdgeKind::Interface);
    return g;
}

// Plain Dijkstra over the adjacency lists.
std::optional<double> dijkstra(const SparseGraph& g, VertexId s, VertexId t) {
    std::vector<double> dist(g.num_vertices(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == t) return d;
        for (VertexId v : g.neighbors(u)) {
            const double nd = d + g.edge_length(u, v);
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return std::nullopt;
}

std::vector<int> bfs_labels(const SparseGraph& g) {
    std::vector<int> label(g.num_vertices(), -1);
    int next = 0;
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
        if (label[s] >= 0) continue;
        std::queue<VertexId> q;
        q.push(s);
        label[s] = next;
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop();
            for (VertexId v : g.neighbors(u))
                if (label[v] < 0) {
                    label[v] = next;
                    q.push(v);
                }
        }
        ++next;
    }
    return label;
}

void check_components(const SparseGraph& g) {
    const auto label = bfs_labels(g);
    for (VertexId a = 0; a < g.num_vertices(); ++a)
        for (VertexId b = a + 1; b < g.num_vertices(); ++b) REQUIRE(g.same_component(a, b) == (label[a] == label[b]));
    REQUIRE(g.component_count() == static_cast<std::size_t>(*std::max_element(label.begin(), label.end()) + 1));
}

}  // namespace

TEST_CASE("edges cache metric lengths and reject duplicates") {
    SparseGraph g(2, Metric::L1, 1.0);
    const auto a = g.add_vertex({0, 0}, VertexKind::Coverage);
    const auto b = g.add_vertex({1, 2}, VertexKind::Coverage);
    CHECK(g.add_edge(a, b, EdgeKind::Interface));
    CHECK_FALSE(g.add_edge(b, a, EdgeKind::Interface));
    CHECK_FALSE(g.add_edge(a, a, EdgeKind::Interface));
    CHECK(g.edge_length(a, b) == 3.0);
    CHECK(g.edge_kind(b, a) == EdgeKind::Interface);
    CHECK(g.num_edges() == 1);
    CHECK(g.remove_edge(b, a));
    CHECK_FALSE(g.has_edge(a, b));
    CHECK_FALSE(g.remove_edge(a, b));
}

TEST_CASE("component index agrees with BFS under random inserts and removals") {
    std::mt19937_64 rng(19);
    SparseGraph g = random_graph(rng, 60, 0, Metric::L2);
    std::uniform_int_distribution<VertexId> pick(0, 59);
    std::vector<std::pair<VertexId, VertexId>> added;
    for (int op = 1; op <= 3000; ++op) {
        if (!added.empty() && rng() % 3 == 0) {
            const std::size_t k = rng() % added.size();
            g.remove_edge(added[k].first, added[k].second);
            added.erase(added.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            const VertexId a = pick(rng), b = pick(rng);
            if (g.add_edge(a, b, EdgeKind::Interface)) added.push_back({a, b});
        }
        if (op % 100 == 0) check_components(g);
    }
}

TEST_CASE("within_radius matches brute force") {
    std::mt19937_64 rng(23);
    for (Metric m : {Metric::L1, Metric::L2}) {
        const SparseGraph g = random_graph(rng, 400, 0, m);
        std::uniform_real_distribution<double> u(-5.0, 105.0);
        for (int i = 0; i < 50; ++i) {
            const Configuration q{u(rng), u(rng)};
            const double r = 3.0 + 10.0 * (i % 5);
            std::vector<std::pair<double, VertexId>> brute;
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
                const double d = distance(q, g.vertex(v), m);
                if (d <= r) brute.push_back({d, v});
            }
            std::sort(brute.begin(), brute.end());
            std::vector<VertexId> expect;
            for (auto& [d, v] : brute) expect.push_back(v);
            CHECK(g.within_radius(q, r) == expect);
        }
    }
}

TEST_CASE("graph_astar on a chain") {
    SparseGraph g(2, Metric::L2, 1.0);
    const auto a = g.add_vertex({0, 0}, VertexKind::Coverage);
    const auto b = g.add_vertex({3, 4}, VertexKind::Coverage);
    const auto c = g.add_vertex({6, 0}, VertexKind::Coverage);
    const auto d = g.add_vertex({20, 20}, VertexKind::Coverage);
    g.add_edge(a, b, EdgeKind::Interface);
    g.add_edge(b, c, EdgeKind::Interface);
    const auto p = graph_astar(g, a, c, Metric::L2);
    REQUIRE(p);
    CHECK(p->vertices == std::vector<VertexId>{a, b, c});
    CHECK(p->length == 10.0);
    CHECK_FALSE(graph_astar(g, a, d, Metric::L2));
    const auto self = graph_astar(g, b, b, Metric::L2);
    REQUIRE(self);
    CHECK(self->length == 0.0);
    CHECK_FALSE(graph_astar_bounded(g, a, c, 9.0));
    CHECK(graph_astar_bounded(g, a, c, 10.0));
}

TEST_CASE("graph_astar equals Dijkstra on random graphs") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const Metric m = trial % 2 ? Metric::L1 : Metric::L2;
        const std::size_t n = 2 + rng() % 50;
        const SparseGraph g = random_graph(rng, n, n * (1 + rng() % 3), m);
        for (int k = 0; k < 10; ++k) {
            const VertexId s = rng() % n, t = rng() % n;
            const auto expect = dijkstra(g, s, t);
            const auto got = graph_astar(g, s, t, m);
            REQUIRE(expect.has_value() == got.has_value());
            if (!got) continue;
            CHECK(got->length == *expect);
            CHECK(got->vertices.front() == s);
            CHECK(got->vertices.back() == t);
            double sum = 0.0;
            for (std::size_t i = 0; i + 1 < got->vertices.size(); ++i)
                sum += g.edge_length(got->vertices[i], got->vertices[i + 1]);
            CHECK(sum == got->length);
        }
    }
}
