#pragma once

// Brute-force reference for shortest collision-free path lengths: Dijkstra
// over a fine regular grid.

#include <optional>

#include "boltspan/cspace.hpp"

namespace boltspan {

enum class GridConnectivity { Axis, AxisDiagonal };

struct GridOracle {
    double resolution = 0.25;
    GridConnectivity connectivity = GridConnectivity::Axis;
};

/// Shortest path length between two valid states: the straight segment when
/// it is free, otherwise a grid path. Grid nodes may touch obstacle
/// boundaries (the result is the infimum over valid paths, not a path the
/// motion validator accepts); obstacles whose grown shells touch without
/// overlapping therefore leave a zero-width gap the grid can use. Each
/// endpoint is joined to the corners of its grid cell, or failing that the
/// nearest node it reaches in a straight line, at metric cost. Returns
/// nullopt when the endpoints are disconnected; throws InputError on
/// invalid input.
[[nodiscard]] std::optional<double> oracle_shortest(const Environment& env, const Configuration& start,
                                                    const Configuration& goal, Metric m, const GridOracle& o);

/// Worst-case relative overestimate of a free-space grid path over the
/// straight-line distance: grid length <= (1 + slack) * distance.
[[nodiscard]] double oracle_slack(const GridOracle& o, Metric m, int dimension);

}  // namespace boltspan
