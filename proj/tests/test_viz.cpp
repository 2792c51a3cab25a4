#include <regex>
#include <vector>

#include "boltspan/maps.hpp"
#include "boltspan/spanner.hpp"
#include "boltspan/viz.hpp"
#include "doctest.h"

using namespace boltspan;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

// Tags open and close in order and attributes are quoted.
bool well_formed(const std::string& xml) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    const std::regex attr(R"(\s+[A-Za-z_:][-A-Za-z0-9_:.]*="[^"<]*")");
    while ((pos = xml.find('<', pos)) != std::string::npos) {
        const auto end = xml.find('>', pos);
        if (end == std::string::npos) return false;
        std::string tag = xml.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.starts_with("?") || tag.starts_with("!")) continue;
        if (tag.starts_with("/")) {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.ends_with("/");
        if (self_closing) tag.pop_back();
        const auto name_end = tag.find_first_of(" \n\t");
        const std::string name = tag.substr(0, name_end);
        const std::string rest = name_end == std::string::npos ? "" : tag.substr(name_end);
        if (std::regex_replace(rest, attr, "").find_first_not_of(" \n\t") != std::string::npos) return false;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("empty graph in an empty square") {
    const auto env = Environment::empty(2, 0.0, 50.0);
    const SparseGraph g(2, Metric::L1, 6.93);
    const auto svg = render_svg(env, &g, nullptr, RenderOptions{});
    CHECK(well_formed(svg));
    CHECK(count(svg, "<rect") == 1);
    CHECK(count(svg, "<circle") == 0);
    CHECK(count(svg, "<line") == 0);
    CHECK(count(svg, "<polyline") == 0);
    CHECK(svg.find("viewBox=\"0 0 50 50\"") != std::string::npos);
}

TEST_CASE("one vertex") {
    const auto env = Environment::empty(2, 0.0, 50.0);
    SparseGraph g(2, Metric::L1, 6.93);
    g.add_vertex({10, 10}, VertexKind::Coverage);
    const auto svg = render_svg(env, &g, nullptr, RenderOptions{});
    CHECK(count(svg, "<circle") == 1);
    CHECK(svg.find("vertices: 1, edges: 0") != std::string::npos);
}

TEST_CASE("map with graph and path is deterministic and complete") {
    const auto env = generate_map(3, 2);
    BuildParams p = BuildParams::defaults_for(2);
    p.termination_failures = 600;
    p.quality_delay_failures = 200;
    SampleStream s(2);
    const auto r = build(env, p, s);
    const std::vector<Configuration> path{r.graph.vertex(0), r.graph.vertex(1)};
    const auto a = render_svg(env, &r.graph, &path, RenderOptions{});
    const auto b = render_svg(env, &r.graph, &path, RenderOptions{});
    CHECK(a == b);
    CHECK(well_formed(a));
    CHECK(count(a, "<circle") == r.graph.num_vertices());
    CHECK(count(a, "<line") == r.graph.num_edges());
    CHECK(count(a, "<polyline") == 1);
    CHECK(count(a, "<rect") == 1 + 2 * env.obstacles().size());
}

TEST_CASE("side by side panels carry their own counts") {
    const auto env = generate_map(3, 2);
    SparseGraph left(2, Metric::L1, 6.93), right(2, Metric::L1, 6.93);
    left.add_vertex({5, 5}, VertexKind::Coverage);
    right.add_vertex({5, 5}, VertexKind::Coverage);
    right.add_vertex({9, 5}, VertexKind::Coverage);
    right.add_edge(0, 1, EdgeKind::Interface);
    const auto svg = render_side_by_side(env, Panel{&left, nullptr, "baseline"}, Panel{&right, nullptr, "bolt"},
                                         RenderOptions{});
    CHECK(well_formed(svg));
    CHECK(svg.find("baseline vertices: 1, edges: 0") != std::string::npos);
    CHECK(svg.find("bolt vertices: 2, edges: 1") != std::string::npos);
    CHECK(count(svg, "<svg") == 3);
}

TEST_CASE("3D needs a slice") {
    const auto env = generate_map(2, 3);
    SparseGraph g(3, Metric::L1, 8.49);
    g.add_vertex({5, 5, 5}, VertexKind::Coverage);
    CHECK_THROWS_AS((void)render_svg(env, &g, nullptr, RenderOptions{}), InputError);
    RenderOptions o;
    parse_slice("z=25", o);
    CHECK(o.slice_axis == 2);
    CHECK(o.slice_value == 25.0);
    const auto svg = render_svg(env, &g, nullptr, o);
    CHECK(well_formed(svg));
    CHECK(svg.find("slice z=25") != std::string::npos);
    RenderOptions bad;
    CHECK_THROWS_AS(parse_slice("w=3", bad), InputError);
    CHECK_THROWS_AS(parse_slice("z", bad), InputError);
    CHECK_THROWS_AS(parse_slice("z=abc", bad), InputError);
    parse_slice("2=80", bad);
    CHECK_THROWS_AS((void)render_svg(env, &g, nullptr, bad), InputError);
    RenderOptions flat;
    parse_slice("x=1", flat);
    CHECK_THROWS_AS((void)render_svg(generate_map(2, 2), nullptr, nullptr, flat), InputError);
    RenderOptions tiny;
    tiny.pixels_per_unit = 0.0;
    CHECK_THROWS_AS((void)render_svg(generate_map(2, 2), nullptr, nullptr, tiny), InputError);
}
