#pragma once

// SVG rendering of environments, roadmaps and paths. 3D data is drawn as a
// projection onto the plane of an axis-aligned slice.

#include <optional>
#include <string>
#include <vector>

#include "boltspan/graph.hpp"

namespace boltspan {

struct RenderOptions {
    double vertex_radius = 0.35;
    double edge_width = 0.12;
    double path_width = 0.45;
    double shell_width = 0.1;
    std::string background = "#ffffff";
    std::string obstacle_fill = "#4a4a4a";
    std::string shell_stroke = "#b0b0b0";
    std::string edge_color = "#3b7dd8";
    std::string vertex_color = "#c0392b";
    std::string path_color = "#27ae60";
    double pixels_per_unit = 12.0;
    // 3D only: the axis held fixed and its value.
    std::optional<int> slice_axis;
    double slice_value = 0.0;
    std::string caption;  // prefixed to the legend
};

struct Panel {
    const SparseGraph* graph = nullptr;
    const std::vector<Configuration>* path = nullptr;
    std::string caption;
};

/// Throws InputError for dimensions other than 2 or 3, for a 3D render
/// without a valid slice, or for non-positive sizes.
[[nodiscard]] std::string render_svg(const Environment& env, const SparseGraph* graph,
                                     const std::vector<Configuration>* path, const RenderOptions& options);

/// Two panels next to each other, e.g. baseline and Bolt on the same map.
[[nodiscard]] std::string render_side_by_side(const Environment& env, const Panel& left, const Panel& right,
                                              const RenderOptions& options);

/// Parses "axis=value" with axis given as 0/1/2 or x/y/z.
void parse_slice(const std::string& text, RenderOptions& options);

}  // namespace boltspan
