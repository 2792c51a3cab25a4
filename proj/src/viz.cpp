#include "boltspan/viz.hpp"

#include <cstdio>
#include <sstream>

namespace boltspan {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// The two drawn axes and, for 3D, the slice axis.
struct Plane {
    std::size_t u = 0;
    std::size_t v = 1;
    std::optional<std::size_t> fixed;
    double value = 0.0;
};

Plane plane_for(const Environment& env, const RenderOptions& options) {
    const std::size_t d = env.dimension();
    if (d != 2 && d != 3) throw InputError("render: only 2D and 3D environments can be drawn");
    if (!(options.pixels_per_unit > 0.0) || !(options.vertex_radius >= 0.0) || !(options.edge_width > 0.0) ||
        !(options.path_width > 0.0)) {
        throw InputError("render: sizes must be positive");
    }
    if (d == 2) {
        if (options.slice_axis) throw InputError("render: slices apply to 3D environments only");
        return {};
    }
    if (!options.slice_axis) throw InputError("render: 3D environments need a slice (axis=value)");
    const int axis = *options.slice_axis;
    if (axis < 0 || axis > 2) throw InputError("render: slice axis must be 0, 1 or 2");
    const auto& b = env.bounds()[static_cast<std::size_t>(axis)];
    if (options.slice_value < b.lo || options.slice_value > b.hi) {
        throw InputError("render: slice value " + num(options.slice_value) + " lies outside the bounds");
    }
    Plane p;
    p.fixed = static_cast<std::size_t>(axis);
    p.value = options.slice_value;
    p.u = axis == 0 ? 1 : 0;
    p.v = axis == 2 ? 1 : 2;
    return p;
}

void draw_panel(std::ostream& out, const Environment& env, const Plane& plane, const SparseGraph* graph,
                const std::vector<Configuration>* path, const RenderOptions& o, const std::string& caption) {
    const auto& bu = env.bounds()[plane.u];
    const auto& bv = env.bounds()[plane.v];
    const double w = bu.length();
    const double h = bv.length();
    out << "<rect x=\"" << num(bu.lo) << "\" y=\"" << num(bv.lo) << "\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" fill=\"" << o.background << "\" stroke=\"#000000\" stroke-width=\"" << num(o.edge_width)
        << "\"/>\n";
    // Flip y so the environment's second axis points up.
    out << "<g transform=\"translate(0 " << num(bv.lo + bv.hi) << ") scale(1 -1)\">\n";

    auto cut = [&](const Box& b) {
        return !plane.fixed || (b.min[*plane.fixed] <= plane.value && plane.value <= b.max[*plane.fixed]);
    };
    auto rect = [&](const Box& b, const std::string& style) {
        out << "<rect x=\"" << num(b.min[plane.u]) << "\" y=\"" << num(b.min[plane.v]) << "\" width=\""
            << num(b.max[plane.u] - b.min[plane.u]) << "\" height=\"" << num(b.max[plane.v] - b.min[plane.v])
            << "\" " << style << "/>\n";
    };
    for (const auto& b : env.inflated_obstacles()) {
        if (cut(b)) {
            rect(b, "fill=\"none\" stroke=\"" + o.shell_stroke + "\" stroke-width=\"" + num(o.shell_width) + "\"");
        }
    }
    for (const auto& b : env.obstacles()) {
        if (cut(b)) rect(b, "fill=\"" + o.obstacle_fill + "\"");
    }

    if (graph) {
        out << "<g stroke=\"" << o.edge_color << "\" stroke-width=\"" << num(o.edge_width) << "\">\n";
        graph->for_each_edge([&](VertexId a, VertexId b, double, EdgeKind) {
            const auto& p = graph->vertex(a);
            const auto& q = graph->vertex(b);
            out << "<line x1=\"" << num(p[plane.u]) << "\" y1=\"" << num(p[plane.v]) << "\" x2=\"" << num(q[plane.u])
                << "\" y2=\"" << num(q[plane.v]) << "\"/>\n";
        });
        out << "</g>\n<g fill=\"" << o.vertex_color << "\">\n";
        for (VertexId v = 0; v < graph->num_vertices(); ++v) {
            const auto& p = graph->vertex(v);
            out << "<circle cx=\"" << num(p[plane.u]) << "\" cy=\"" << num(p[plane.v]) << "\" r=\""
                << num(o.vertex_radius) << "\"/>\n";
        }
        out << "</g>\n";
    }
    if (path && !path->empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << o.path_color << "\" stroke-width=\"" << num(o.path_width)
            << "\" points=\"";
        for (std::size_t i = 0; i < path->size(); ++i) {
            out << (i ? " " : "") << num((*path)[i][plane.u]) << ',' << num((*path)[i][plane.v]);
        }
        out << "\"/>\n";
    }
    out << "</g>\n";

    std::string legend = caption.empty() ? "" : caption + " ";
    legend += "vertices: " + std::to_string(graph ? graph->num_vertices() : 0) +
              ", edges: " + std::to_string(graph ? graph->num_edges() : 0);
    if (plane.fixed) legend += " (slice " + std::string(1, "xyz"[*plane.fixed]) + "=" + num(plane.value) + ")";
    const double font = std::max(w, h) / 30.0;
    out << "<text x=\"" << num(bu.lo + font * 0.5) << "\" y=\"" << num(bv.lo + font * 1.2) << "\" font-family=\"monospace\" font-size=\""
        << num(font) << "\" fill=\"#000000\">" << escape(legend) << "</text>\n";
}

std::string header(double x, double y, double w, double h, double scale) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w * scale) << "\" height=\""
        << num(h * scale) << "\" viewBox=\"" << num(x) << ' ' << num(y) << ' ' << num(w) << ' ' << num(h) << "\">\n";
    return out.str();
}

}  // namespace

std::string render_svg(const Environment& env, const SparseGraph* graph, const std::vector<Configuration>* path,
                       const RenderOptions& options) {
    const Plane plane = plane_for(env, options);
    if (graph && graph->dimension() != env.dimension()) throw InputError("render: roadmap and environment dimensions differ");
    const auto& bu = env.bounds()[plane.u];
    const auto& bv = env.bounds()[plane.v];
    std::ostringstream out;
    out << header(bu.lo, bv.lo, bu.length(), bv.length(), options.pixels_per_unit);
    draw_panel(out, env, plane, graph, path, options, options.caption);
    out << "</svg>\n";
    return out.str();
}

std::string render_side_by_side(const Environment& env, const Panel& left, const Panel& right,
                                const RenderOptions& options) {
    const Plane plane = plane_for(env, options);
    for (const Panel* p : {&left, &right}) {
        if (p->graph && p->graph->dimension() != env.dimension()) {
            throw InputError("render: roadmap and environment dimensions differ");
        }
    }
    const auto& bu = env.bounds()[plane.u];
    const auto& bv = env.bounds()[plane.v];
    const double w = bu.length();
    const double h = bv.length();
    const double gap = w / 20.0;
    std::ostringstream out;
    out << header(0.0, 0.0, 2.0 * w + gap, h, options.pixels_per_unit);
    double x = 0.0;
    for (const Panel* p : {&left, &right}) {
        out << "<svg x=\"" << num(x) << "\" y=\"0\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" viewBox=\""
            << num(bu.lo) << ' ' << num(bv.lo) << ' ' << num(w) << ' ' << num(h) << "\">\n";
        draw_panel(out, env, plane, p->graph, p->path, options, p->caption);
        out << "</svg>\n";
        x += w + gap;
    }
    out << "</svg>\n";
    return out.str();
}

void parse_slice(const std::string& text, RenderOptions& options) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InputError("slice must look like axis=value, got '" + text + "'");
    const std::string axis = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    int index = -1;
    if (axis == "0" || axis == "x") index = 0;
    if (axis == "1" || axis == "y") index = 1;
    if (axis == "2" || axis == "z") index = 2;
    if (index < 0) throw InputError("slice axis must be x, y, z or 0-2, got '" + axis + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw InputError("slice value must be a number, got '" + value + "'");
    options.slice_axis = index;
    options.slice_value = v;
}

}  // namespace boltspan
