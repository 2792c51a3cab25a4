#pragma once

// Invariant checks for a finished roadmap against an environment.

#include <cstdint>
#include <string>

#include "boltspan/oracle.hpp"
#include "boltspan/roadmap_io.hpp"

namespace boltspan {

struct ValidationReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t invalid_vertices = 0;
    std::size_t invalid_edges = 0;      // straight-line motion in collision
    std::size_t length_mismatches = 0;  // cached length differs from the metric
    std::size_t component_mismatches = 0;
    std::size_t queries = 0;
    std::size_t failed_plans = 0;
    std::size_t stretch_violations = 0;
    double max_ratio = 0.0;  // worst path length / oracle length

    [[nodiscard]] std::size_t violations() const noexcept {
        return invalid_vertices + invalid_edges + length_mismatches + component_mismatches + failed_plans +
               stretch_violations;
    }
};

/// Re-checks every vertex and edge, compares the component index with a
/// breadth-first search, then plans `queries` random pairs and compares
/// each path with the grid oracle: length <= t * opt + 4 * dense_delta +
/// slack * opt.
[[nodiscard]] ValidationReport validate_roadmap(const Roadmap& roadmap, const Environment& env, std::size_t queries,
                                                std::uint64_t seed, double motion_resolution = 0.1);

[[nodiscard]] std::string to_string(const ValidationReport& report);

}  // namespace boltspan
