#include "boltspan/roadmap_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace boltspan {

namespace {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_number(const std::string& token, std::size_t line) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || !std::isfinite(value)) {
        throw InputError("roadmap line " + std::to_string(line) + ": bad number '" + token + "'");
    }
    return value;
}

VertexId parse_id(const std::string& token, std::size_t line) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || token.size() > 9) {
        throw InputError("roadmap line " + std::to_string(line) + ": bad vertex id '" + token + "'");
    }
    return static_cast<VertexId>(std::stoul(token));
}

}  // namespace

void write_roadmap(std::ostream& out, const SparseGraph& graph, const RoadmapHeader& header) {
    out << "BOLTSPAN 1 " << graph.dimension() << ' ' << to_string(graph.metric()) << ' '
        << format_number(header.delta) << ' ' << format_number(header.dense_delta) << ' '
        << format_number(header.stretch) << '\n';
    for (VertexId v = 0; v < graph.num_vertices(); ++v) {
        out << "v " << v;
        for (double c : graph.vertex(v)) out << ' ' << format_number(c);
        out << '\n';
    }
    graph.for_each_edge([&](VertexId a, VertexId b, double, EdgeKind) { out << "e " << a << ' ' << b << '\n'; });
}

std::string roadmap_to_string(const SparseGraph& graph, const RoadmapHeader& header) {
    std::ostringstream out;
    write_roadmap(out, graph, header);
    return out.str();
}

void save_roadmap(const std::string& path, const SparseGraph& graph, const RoadmapHeader& header) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write roadmap file '" + path + "'");
    write_roadmap(out, graph, header);
    if (!out) throw InputError("failed writing roadmap file '" + path + "'");
}

Roadmap read_roadmap(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) throw InputError("roadmap: empty file");
    std::istringstream head(line);
    std::string magic, version, metric, delta, dense, stretch;
    std::size_t dimension = 0;
    if (!(head >> magic >> version >> dimension >> metric >> delta >> dense >> stretch) || magic != "BOLTSPAN") {
        throw InputError("roadmap line 1: expected 'BOLTSPAN 1 <d> <metric> <delta> <dense_delta> <stretch>'");
    }
    if (version != "1") throw InputError("roadmap line 1: unsupported version " + version);
    if (dimension == 0) throw InputError("roadmap line 1: dimension must be positive");

    RoadmapHeader header{dimension, parse_metric(metric), parse_number(delta, 1), parse_number(dense, 1),
                         parse_number(stretch, 1)};
    if (!(header.delta > 0.0)) throw InputError("roadmap line 1: delta must be positive");
    Roadmap map{header, SparseGraph(dimension, header.metric, header.delta)};

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        const std::string where = "roadmap line " + std::to_string(line_no) + ": ";
        if (tag == "v") {
            if (tokens.size() != dimension + 1) {
                throw InputError(where + "expected an id and " + std::to_string(dimension) + " coordinates");
            }
            const VertexId id = parse_id(tokens[0], line_no);
            if (id != map.graph.num_vertices()) throw InputError(where + "vertex ids must be sequential from 0");
            if (map.graph.num_edges() != 0) throw InputError(where + "vertices must precede edges");
            Configuration q(dimension);
            for (std::size_t i = 0; i < dimension; ++i) q[i] = parse_number(tokens[i + 1], line_no);
            map.graph.add_vertex(std::move(q), VertexKind::Loaded);
        } else if (tag == "e") {
            if (tokens.size() != 2) throw InputError(where + "expected two vertex ids");
            const VertexId a = parse_id(tokens[0], line_no);
            const VertexId b = parse_id(tokens[1], line_no);
            if (a >= map.graph.num_vertices() || b >= map.graph.num_vertices()) {
                throw InputError(where + "edge refers to an unknown vertex");
            }
            if (a == b) throw InputError(where + "self-loop");
            if (!map.graph.add_edge(a, b, EdgeKind::Loaded)) throw InputError(where + "duplicate edge");
        } else {
            throw InputError(where + "unknown record '" + tag + "'");
        }
    }
    return map;
}

Roadmap parse_roadmap(const std::string& text) {
    std::istringstream in(text);
    return read_roadmap(in);
}

Roadmap load_roadmap(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open roadmap file '" + path + "'");
    return read_roadmap(in);
}

}  // namespace boltspan
