#include "boltspan/maps.hpp"
#include "boltspan/query.hpp"
#include "boltspan/search.hpp"
#include "boltspan/spanner.hpp"
#include "doctest.h"

using namespace boltspan;

namespace {

// Square ring of four vertices around a central block.
struct Ring {
    Environment env{{{0, 20}, {0, 20}}, {Box{{7, 7}, {13, 13}}}, 1.0};
    SparseGraph graph{2, Metric::L1, 6.93};
    Ring() {
        graph.add_vertex({3, 3}, VertexKind::Coverage);
        graph.add_vertex({17, 3}, VertexKind::Coverage);
        graph.add_vertex({17, 17}, VertexKind::Coverage);
        graph.add_vertex({3, 17}, VertexKind::Coverage);
        for (VertexId v = 0; v < 4; ++v) graph.add_edge(v, (v + 1) % 4, EdgeKind::Interface);
    }
};

}  // namespace

TEST_CASE("start equal to goal") {
    Ring r;
    const auto res = plan(r.graph, r.env, {2, 2}, {2, 2}, QueryOptions{});
    REQUIRE(res);
    CHECK(res->length == 0.0);
}

TEST_CASE("path through the roadmap") {
    Ring r;
    QueryOptions o;
    o.delta = 6.93;
    const auto res = plan(r.graph, r.env, {2, 4}, {18, 16}, o);
    REQUIRE(res);
    CHECK(res->path.front() == Configuration{2, 4});
    CHECK(res->path.back() == Configuration{18, 16});
    CHECK(res->length == doctest::Approx(path_length(res->path, Metric::L1)));
    CHECK(res->roadmap_path.size() == 3);
    CHECK(res->length == doctest::Approx(2 + 14 + 14 + 2));
    const MotionValidator mv{0.1};
    for (std::size_t i = 0; i + 1 < res->path.size(); ++i) CHECK(mv.check_motion(res->path[i], res->path[i + 1], r.env));
    const auto smoothed = smooth(res->path, r.env, mv, Metric::L1);
    CHECK(path_length(smoothed, Metric::L1) <= res->length);
}

TEST_CASE("nearby endpoints join directly") {
    Ring r;
    const auto res = plan(r.graph, r.env, {2, 2}, {4, 5}, QueryOptions{});
    REQUIRE(res);
    CHECK(res->direct);
    CHECK(res->length == 5.0);
}

TEST_CASE("invalid endpoints and unreachable goals") {
    Ring r;
    CHECK_THROWS_AS((void)plan(r.graph, r.env, {10, 10}, {2, 2}, QueryOptions{}), InputError);
    CHECK_THROWS_AS((void)plan(r.graph, r.env, {2, 2, 2}, {2, 2}, QueryOptions{}), InputError);
    CHECK_THROWS_AS((void)plan(r.graph, r.env, {2, 2}, {25, 2}, QueryOptions{}), InputError);
    SparseGraph lonely(2, Metric::L1, 6.93);
    lonely.add_vertex({3, 3}, VertexKind::Coverage);
    CHECK_FALSE(plan(lonely, r.env, {2, 2}, {18, 18}, QueryOptions{}));
}

TEST_CASE("repair skips edges blocked in the new environment") {
    Ring r;
    // A new obstacle cuts the bottom edge of the ring.
    const Environment changed({{0, 20}, {0, 20}}, {Box{{7, 7}, {13, 13}}, Box{{9, 0}, {10, 5}}}, 1.0);
    const auto before = plan(r.graph, r.env, {2, 2}, {18, 2}, QueryOptions{});
    REQUIRE(before);
    CHECK(before->roadmap_path == std::vector<VertexId>{0, 1});
    const auto after = plan_with_repair(r.graph, changed, {2, 2}, {18, 2}, QueryOptions{});
    REQUIRE(after);
    CHECK(after->roadmap_path == std::vector<VertexId>{0, 3, 2, 1});
    const MotionValidator mv{0.1};
    for (std::size_t i = 0; i + 1 < after->path.size(); ++i)
        CHECK(mv.check_motion(after->path[i], after->path[i + 1], changed));
    // Closing the ring entirely leaves no path.
    const Environment closed({{0, 20}, {0, 20}}, {Box{{7, 7}, {13, 13}}, Box{{9, 0}, {10, 7}}, Box{{9, 13}, {10, 20}}},
                             1.0);
    CHECK_FALSE(plan_with_repair(r.graph, closed, {2, 2}, {18, 2}, QueryOptions{}));
}

TEST_CASE("queries on a built map stay collision free") {
    const auto env = generate_map(3, 2);
    BuildParams p = BuildParams::defaults_for(2);
    p.termination_failures = 1000;
    p.quality_delay_failures = 300;
    SampleStream s(4);
    const auto built = build(env, p, s);
    SampleStream pick(99);
    const MotionValidator mv{0.1};
    int answered = 0;
    for (int i = 0; i < 30; ++i) {
        Configuration a = pick.next_uniform(env), b = pick.next_uniform(env);
        if (!env.is_valid(a) || !env.is_valid(b)) continue;
        const auto res = plan(built.graph, env, a, b, QueryOptions{p.delta, 0.1});
        REQUIRE(res);
        ++answered;
        for (std::size_t k = 0; k + 1 < res->path.size(); ++k) CHECK(mv.check_motion(res->path[k], res->path[k + 1], env));
    }
    CHECK(answered > 10);
}
