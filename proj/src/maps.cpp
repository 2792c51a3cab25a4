#include "boltspan/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "boltspan/sampling.hpp"

namespace boltspan {

namespace {

const MapSpec kSpecs[kMapCount] = {
    {1, 0, 0.0, 0, 1, 0},
    {2, 4, 8.0, 1, 3, 0xb01d0002},
    {3, 8, 6.0, 3, 6, 0xb01d0003},
    {4, 14, 4.0, 6, 20, 0xb01d0004},
    {5, 22, 3.0, 20, 1000, 0xb01d0005},
};

double axis_gap(const Box& a, const Box& b, std::size_t i) {
    return std::max({0.0, b.min[i] - a.max[i], a.min[i] - b.max[i]});
}

// Separation of two axis-aligned boxes in the max norm; 0 when they touch
// or overlap.
double box_gap(const Box& a, const Box& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.min.size(); ++i) gap = std::max(gap, axis_gap(a, b, i));
    return gap;
}

// Positive gaps between the box and the walls of the first two axes.
std::vector<double> wall_gaps(const Box& b) {
    std::vector<double> gaps;
    for (std::size_t i = 0; i < 2; ++i) {
        for (double g : {b.min[i], kMapExtent - b.max[i]}) {
            if (g > 0.0) gaps.push_back(g);
        }
    }
    return gaps;
}

// Gap of a passage between two boxes facing each other across one axis
// (their extents overlap on the other axis); 0 when they do not face.
double facing_gap(const Box& a, const Box& b) {
    double gap = 0.0;
    int separated = 0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double g = axis_gap(a, b, i);
        if (g > 0.0) {
            gap = g;
            ++separated;
        }
    }
    return separated == 1 ? gap : 0.0;
}

// Widths of all passages: facing box pairs and box-to-wall gaps.
std::vector<double> all_gaps(const std::vector<Box>& boxes) {
    std::vector<double> gaps;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (double g : wall_gaps(boxes[i])) gaps.push_back(g);
        for (std::size_t j = i + 1; j < boxes.size(); ++j) gaps.push_back(facing_gap(boxes[i], boxes[j]));
    }
    return gaps;
}

std::vector<Box> flat_boxes(const Environment& env) {
    std::vector<Box> out;
    for (const auto& b : env.obstacles()) out.push_back(Box{Configuration{b.min[0], b.min[1]}, Configuration{b.max[0], b.max[1]}});
    return out;
}

double snap(double x) { return std::round(x * 2.0) / 2.0; }

std::vector<Box> place_obstacles(const MapSpec& spec, std::mt19937_64& rng) {
    std::vector<Box> boxes;
    auto uniform = [&](double lo, double hi) { return lo + unit_double(rng) * (hi - lo); };
    int attempts = 0;
    while (static_cast<int>(boxes.size()) < spec.obstacles) {
        if (++attempts > 20000) return {};
        Box b{Configuration(2), Configuration(2)};
        const bool wall = unit_double(rng) < 0.2;
        for (std::size_t i = 0; i < 2; ++i) {
            const double len = snap(uniform(2.0, 10.0));
            const double lo = snap(uniform(0.0, kMapExtent - len));
            b.min[i] = lo;
            b.max[i] = lo + len;
        }
        if (wall) {
            // Long wall segment attached to one side.
            const std::size_t axis = unit_double(rng) < 0.5 ? 0 : 1;
            const double len = snap(uniform(8.0, 20.0));
            const bool low = unit_double(rng) < 0.5;
            b.min[axis] = low ? 0.0 : kMapExtent - len;
            b.max[axis] = low ? len : kMapExtent;
        }
        bool ok = true;
        for (double g : wall_gaps(b)) ok = ok && g >= spec.min_gap;
        for (const auto& other : boxes) ok = ok && box_gap(b, other) >= spec.min_gap;
        if (ok) boxes.push_back(std::move(b));
    }
    return boxes;
}

Environment extrude(const std::vector<Box>& flat, int dimension) {
    std::vector<Interval> bounds(static_cast<std::size_t>(dimension), Interval{0.0, kMapExtent});
    std::vector<Box> boxes;
    for (const auto& b : flat) {
        if (dimension == 2) {
            boxes.push_back(b);
        } else {
            boxes.push_back(Box{Configuration{b.min[0], b.min[1], 0.0}, Configuration{b.max[0], b.max[1], kMapExtent}});
        }
    }
    return Environment(std::move(bounds), std::move(boxes), kMapClearance);
}

bool acceptable(const MapSpec& spec, const std::vector<Box>& boxes) {
    if (static_cast<int>(boxes.size()) != spec.obstacles) return false;
    const Environment env = extrude(boxes, 2);
    const int narrow = narrow_passage_count(env);
    if (narrow < spec.min_narrow || narrow >= spec.max_narrow) return false;
    if (spec.obstacles > 0 && minimum_gap(env) >= spec.min_gap + 1.5) return false;
    return free_space_connected(env);
}

}  // namespace

const MapSpec& map_spec(int id) {
    if (id < 1 || id > kMapCount) throw InputError("unknown map id " + std::to_string(id) + " (expected 1-5)");
    return kSpecs[id - 1];
}

Environment generate_map(int id, int dimension) {
    const MapSpec& spec = map_spec(id);
    if (dimension != 2 && dimension != 3) throw InputError("maps exist in 2D and 3D only");
    std::mt19937_64 rng(spec.seed);
    for (int round = 0; round < 100000; ++round) {
        auto boxes = place_obstacles(spec, rng);
        if (acceptable(spec, boxes)) return extrude(boxes, dimension);
    }
    throw std::logic_error("map generator found no acceptable layout");
}

int narrow_passage_count(const Environment& env) {
    int count = 0;
    for (double g : all_gaps(flat_boxes(env))) count += g > 0.0 && g < kNarrowGap;
    return count;
}

double minimum_gap(const Environment& env) {
    double best = std::numeric_limits<double>::infinity();
    for (double g : all_gaps(flat_boxes(env))) {
        if (g > 0.0) best = std::min(best, g);
    }
    return best;
}

bool free_space_connected(const Environment& env, double resolution) {
    const std::size_t d = env.dimension();
    std::vector<std::size_t> counts(d), stride(d, 1);
    for (std::size_t i = 0; i < d; ++i) {
        counts[i] = static_cast<std::size_t>(std::floor(env.bounds()[i].length() / resolution + 1e-9)) + 1;
    }
    for (std::size_t i = d - 1; i > 0; --i) stride[i - 1] = stride[i] * counts[i];
    const std::size_t total = stride[0] * counts[0];
    auto position = [&](std::size_t node) {
        Configuration q(d);
        for (std::size_t i = 0; i < d; ++i) q[i] = env.bounds()[i].lo + resolution * static_cast<double>((node / stride[i]) % counts[i]);
        return q;
    };
    std::vector<std::int8_t> state(total, 0);  // 0 unknown, 1 free, 2 blocked, 3 reached
    std::size_t free_count = 0;
    std::size_t seed = total;
    for (std::size_t n = 0; n < total; ++n) {
        state[n] = env.is_valid(position(n)) ? 1 : 2;
        if (state[n] == 1) {
            ++free_count;
            if (seed == total) seed = n;
        }
    }
    if (free_count == 0) return false;
    std::vector<std::size_t> stack{seed};
    state[seed] = 3;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        ++reached;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t k = (u / stride[i]) % counts[i];
            if (k > 0 && state[u - stride[i]] == 1) {
                state[u - stride[i]] = 3;
                stack.push_back(u - stride[i]);
            }
            if (k + 1 < counts[i] && state[u + stride[i]] == 1) {
                state[u + stride[i]] = 3;
                stack.push_back(u + stride[i]);
            }
        }
    }
    return reached == free_count;
}

std::string map_file_name(int id, int dimension) {
    return "map" + std::to_string(id) + "_" + std::to_string(dimension) + "d.json";
}

}  // namespace boltspan
