#pragma once

// Text roadmap files:
//   BOLTSPAN 1 <d> <metric> <delta> <dense_delta> <stretch>
//   v <id> <c0> <c1> ...
//   e <id1> <id2>
// Numbers are written with 17 significant digits so a load reproduces the
// graph bit for bit.

#include <iosfwd>
#include <string>

#include "boltspan/graph.hpp"

namespace boltspan {

struct RoadmapHeader {
    std::size_t dimension = 2;
    Metric metric = Metric::L1;
    double delta = 0.0;
    double dense_delta = 0.0;
    double stretch = 1.0;
};

struct Roadmap {
    RoadmapHeader header;
    SparseGraph graph;
};

void write_roadmap(std::ostream& out, const SparseGraph& graph, const RoadmapHeader& header);
[[nodiscard]] std::string roadmap_to_string(const SparseGraph& graph, const RoadmapHeader& header);
void save_roadmap(const std::string& path, const SparseGraph& graph, const RoadmapHeader& header);

/// Throws InputError on malformed text: wrong header, non-sequential ids,
/// dangling or duplicate edges, wrong coordinate counts.
[[nodiscard]] Roadmap read_roadmap(std::istream& in);
[[nodiscard]] Roadmap parse_roadmap(const std::string& text);
[[nodiscard]] Roadmap load_roadmap(const std::string& path);

}  // namespace boltspan
