#pragma once

// Procedural benchmark maps: five 50x50 maps of increasing difficulty,
// extruded along z for the 3D variants.

#include <cstdint>
#include <string>
#include <vector>

#include "boltspan/cspace.hpp"

namespace boltspan {

struct MapSpec {
    int id = 1;
    int obstacles = 0;
    double min_gap = 0.0;      // minimum corridor width between obstacles/walls
    int min_narrow = 0;        // required range of narrow passages [min, max)
    int max_narrow = 1;
    std::uint64_t seed = 0;
};

inline constexpr double kMapExtent = 50.0;
inline constexpr double kMapClearance = 1.0;
inline constexpr double kNarrowGap = 10.0;  // gaps below this count as narrow passages
inline constexpr int kMapCount = 5;

[[nodiscard]] const MapSpec& map_spec(int id);

/// Deterministic generator; throws InputError for an unknown id or a
/// dimension other than 2 or 3.
[[nodiscard]] Environment generate_map(int id, int dimension);

/// Number of obstacle/obstacle and obstacle/wall gaps in (0, kNarrowGap).
[[nodiscard]] int narrow_passage_count(const Environment& env);
/// Smallest positive obstacle/obstacle or obstacle/wall gap (infinity if none).
[[nodiscard]] double minimum_gap(const Environment& env);
/// Whether the valid states form one connected region on a grid of the
/// given resolution.
[[nodiscard]] bool free_space_connected(const Environment& env, double resolution = 0.25);

/// File name of a shipped map, e.g. "map3_2d.json".
[[nodiscard]] std::string map_file_name(int id, int dimension);

}  // namespace boltspan
