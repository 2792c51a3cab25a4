#include <random>
#include <sstream>

#include "boltspan/maps.hpp"
#include "boltspan/roadmap_io.hpp"
#include "boltspan/spanner.hpp"
#include "doctest.h"

using namespace boltspan;

TEST_CASE("round trip is bit exact") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    SparseGraph g(3, Metric::L2, 2.0);
    for (int i = 0; i < 200; ++i) g.add_vertex({u(rng), u(rng), u(rng) * 1e-7}, VertexKind::Coverage);
    for (int i = 0; i < 600; ++i) g.add_edge(rng() % 200, rng() % 200, EdgeKind::Interface);
    const RoadmapHeader h{3, Metric::L2, 8.49, 0.849, compute_stretch(3, 5.65, 0.849, 4)};
    const std::string text = roadmap_to_string(g, h);
    const Roadmap back = parse_roadmap(text);
    CHECK(back.graph.same_structure(g));
    CHECK(back.header.stretch == h.stretch);
    CHECK(back.header.delta == h.delta);
    CHECK(back.header.metric == Metric::L2);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        for (std::size_t i = 0; i < 3; ++i) CHECK(back.graph.vertex(v)[i] == g.vertex(v)[i]);
    CHECK(roadmap_to_string(back.graph, back.header) == text);
}

TEST_CASE("built roadmap survives a save and load") {
    const auto env = generate_map(2, 2);
    BuildParams p = BuildParams::defaults_for(2);
    p.termination_failures = 600;
    p.quality_delay_failures = 200;
    SampleStream s(6);
    const auto r = build(env, p, s);
    const RoadmapHeader h{2, p.metric, p.delta, p.dense_delta, r.stretch};
    const std::string path = "roadmap_io_test.brm";
    save_roadmap(path, r.graph, h);
    const auto back = load_roadmap(path);
    CHECK(back.graph.same_structure(r.graph));
    std::remove(path.c_str());
}

TEST_CASE("malformed roadmaps are rejected with the line") {
    auto fails_on = [](const std::string& text, const std::string& needle) {
        try {
            (void)parse_roadmap(text);
        } catch (const InputError& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };
    const std::string head = "BOLTSPAN 1 2 l1 6.93 0.693 3.3\n";
    CHECK(fails_on("", "empty"));
    CHECK(fails_on("ROADMAP 1 2 l1 1 0.1 2\n", "line 1"));
    CHECK(fails_on("BOLTSPAN 2 2 l1 1 0.1 2\n", "line 1"));
    CHECK(fails_on(head + "v 1 0 0\n", "line 2"));
    CHECK(fails_on(head + "v 0 0\n", "line 2"));
    CHECK(fails_on(head + "v 0 0 0\nv 1 1 1\ne 0 2\n", "line 4"));
    CHECK(fails_on(head + "v 0 0 0\nv 1 1 1\ne 0 1\ne 1 0\n", "line 5"));
    CHECK(fails_on(head + "v 0 0 0\ne 0 0\n", "line 3"));
    CHECK(fails_on(head + "v 0 0 0\ne 0 1\nv 1 1 1\n", "line 3"));
    CHECK(fails_on(head + "v 0 0 x\n", "line 2"));
    CHECK(fails_on(head + "q 0\n", "line 2"));
    CHECK_THROWS_AS((void)load_roadmap("/nonexistent/file.brm"), InputError);
    CHECK_NOTHROW((void)parse_roadmap(head + "v 0 0 0\nv 1 1 1\ne 0 1\n"));
}
