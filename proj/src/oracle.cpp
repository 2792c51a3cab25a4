#include "boltspan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace boltspan {

namespace {

// Obstacles grown by the clearance without clipping to the bounds: a shell
// cut off at the bounds would leave a gap along the outer wall.
std::vector<Box> shells(const Environment& env) {
    std::vector<Box> out;
    for (const Box& b : env.obstacles()) out.push_back(b.inflated(env.clearance()));
    return out;
}

// In bounds and outside the open interior of every shell. Nodes on a shell
// boundary are limits of valid states, so paths through them measure the
// infimum over valid paths.
bool in_closure(const Environment& env, const std::vector<Box>& shells, const Configuration& q) {
    if (!env.in_bounds(q)) return false;
    for (const Box& b : shells) {
        bool inside = true;
        for (std::size_t i = 0; i < q.size() && inside; ++i) inside = b.min[i] < q[i] && q[i] < b.max[i];
        if (inside) return false;
    }
    return true;
}

// Straight segment in the closure of the free space, checked at `step`.
bool closure_motion(const Environment& env, const std::vector<Box>& shells, const Configuration& a,
                    const Configuration& b, double step) {
    const double len = distance(a, b, Metric::L2);
    const auto n = static_cast<std::size_t>(std::ceil(len / step));
    for (std::size_t k = 0; k <= n; ++k) {
        if (!in_closure(env, shells, n == 0 ? a : interpolate(a, b, static_cast<double>(k) / static_cast<double>(n)))) {
            return false;
        }
    }
    return true;
}

struct Grid {
    const Environment& env;
    double res;
    std::vector<std::size_t> counts;
    std::vector<std::size_t> stride;
    std::vector<Box> shells;
    std::vector<std::int8_t> valid;  // -1 unknown

    Grid(const Environment& e, double r) : env(e), res(r), shells(boltspan::shells(e)) {
        const std::size_t d = env.dimension();
        counts.resize(d);
        stride.assign(d, 1);
        for (std::size_t i = 0; i < d; ++i) {
            counts[i] = static_cast<std::size_t>(std::floor(env.bounds()[i].length() / res + 1e-9)) + 1;
        }
        for (std::size_t i = d - 1; i > 0; --i) stride[i - 1] = stride[i] * counts[i];
        valid.assign(stride[0] * counts[0], -1);
    }

    [[nodiscard]] std::size_t size() const { return valid.size(); }

    [[nodiscard]] Configuration position(std::size_t node) const {
        Configuration q(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            q[i] = env.bounds()[i].lo + res * static_cast<double>((node / stride[i]) % counts[i]);
        }
        return q;
    }

    bool ok(std::size_t node) {
        if (valid[node] < 0) valid[node] = in_closure(env, shells, position(node)) ? 1 : 0;
        return valid[node] == 1;
    }
};

struct Move {
    std::vector<int> offset;
    double cost;
};

std::vector<Move> moves_for(std::size_t d, GridConnectivity c, Metric m, double res) {
    std::vector<Move> moves;
    std::vector<int> offset(d, -1);
    while (true) {
        int nonzero = 0;
        for (int o : offset) nonzero += o != 0;
        if (nonzero == 1 || (nonzero > 1 && c == GridConnectivity::AxisDiagonal)) {
            const double cost = m == Metric::L1 ? res * nonzero : res * std::sqrt(static_cast<double>(nonzero));
            moves.push_back({offset, cost});
        }
        std::size_t i = 0;
        while (i < d && ++offset[i] > 1) offset[i++] = -1;
        if (i == d) break;
    }
    return moves;
}

// Every corner of the box spanned by a move must be valid; with obstacles
// wider than a cell this keeps diagonal moves from clipping corners.
bool move_clear(Grid& grid, const std::vector<std::size_t>& index, const Move& move) {
    const std::size_t d = index.size();
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < d; ++i) {
        if (move.offset[i] != 0) axes.push_back(i);
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << axes.size()); ++mask) {
        std::size_t node = 0;
        for (std::size_t i = 0; i < d; ++i) node += index[i] * grid.stride[i];
        for (std::size_t k = 0; k < axes.size(); ++k) {
            if (mask & (std::size_t{1} << k)) {
                node = node + static_cast<std::size_t>(static_cast<long long>(grid.stride[axes[k]]) * move.offset[axes[k]]);
            }
        }
        if (!grid.ok(node)) return false;
    }
    return true;
}

// Grid nodes an endpoint is joined to, with their joining costs.
std::vector<std::pair<std::size_t, double>> anchors(Grid& grid, const Configuration& q, Metric m, double step) {
    const std::size_t d = q.size();
    std::vector<std::size_t> base(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double t = (q[i] - grid.env.bounds()[i].lo) / grid.res;
        base[i] = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(t))), grid.counts[i] - 1);
    }
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        std::size_t node = 0;
        bool inside = true;
        for (std::size_t i = 0; i < d; ++i) {
            const std::size_t k = base[i] + ((mask >> i) & 1);
            if (k >= grid.counts[i]) inside = false;
            node += k * grid.stride[i];
        }
        if (!inside || !grid.ok(node)) continue;
        const Configuration p = grid.position(node);
        if (closure_motion(grid.env, grid.shells, q, p, step)) out.emplace_back(node, distance(q, p, m));
    }
    if (!out.empty()) return out;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_node = 0;
    for (std::size_t node = 0; node < grid.size(); ++node) {
        if (!grid.ok(node)) continue;
        const Configuration p = grid.position(node);
        const double dist = distance(q, p, m);
        if (dist < best && closure_motion(grid.env, grid.shells, q, p, step)) {
            best = dist;
            best_node = node;
        }
    }
    if (std::isfinite(best)) out.emplace_back(best_node, best);
    return out;
}

}  // namespace

std::optional<double> oracle_shortest(const Environment& env, const Configuration& start, const Configuration& goal,
                                      Metric m, const GridOracle& o) {
    if (!(o.resolution > 0.0)) throw InputError("oracle: resolution must be positive");
    if (!env.obstacles().empty() && o.resolution > env.clearance()) {
        throw InputError("oracle: resolution must not exceed the clearance");
    }
    if (!env.is_valid(start) || !env.is_valid(goal)) throw InputError("oracle: endpoints must be valid");

    // A free straight segment is a shortest path in any norm.
    const double step = std::min(0.1, o.resolution / 2.0);
    if (MotionValidator{step}.check_motion(start, goal, env)) return distance(start, goal, m);
    double best = std::numeric_limits<double>::infinity();

    Grid grid(env, o.resolution);
    const auto sources = anchors(grid, start, m, step);
    const auto sinks = anchors(grid, goal, m, step);
    if (sources.empty() || sinks.empty()) return std::isfinite(best) ? std::optional<double>(best) : std::nullopt;

    std::vector<double> sink_cost(grid.size(), -1.0);
    for (const auto& [node, cost] : sinks) sink_cost[node] = cost;

    const auto moves = moves_for(env.dimension(), o.connectivity, m, o.resolution);
    std::vector<double> dist(grid.size(), std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    for (const auto& [node, cost] : sources) {
        if (cost < dist[node]) {
            dist[node] = cost;
            open.emplace(cost, node);
        }
    }
    const std::size_t d = env.dimension();
    std::vector<std::size_t> index(d);
    while (!open.empty()) {
        const auto [du, u] = open.top();
        open.pop();
        if (du > dist[u]) continue;
        if (du >= best) break;
        if (sink_cost[u] >= 0.0) best = std::min(best, du + sink_cost[u]);
        for (std::size_t i = 0; i < d; ++i) index[i] = (u / grid.stride[i]) % grid.counts[i];
        for (const auto& move : moves) {
            std::size_t v = 0;
            bool inside = true;
            for (std::size_t i = 0; i < d; ++i) {
                const long long k = static_cast<long long>(index[i]) + move.offset[i];
                if (k < 0 || k >= static_cast<long long>(grid.counts[i])) {
                    inside = false;
                    break;
                }
                v += static_cast<std::size_t>(k) * grid.stride[i];
            }
            if (!inside || !grid.ok(v)) continue;
            const double candidate = du + move.cost;
            if (candidate >= dist[v]) continue;
            if (move.cost > o.resolution * 1.5 && !move_clear(grid, index, move)) continue;
            dist[v] = candidate;
            open.emplace(candidate, v);
        }
    }
    return std::isfinite(best) ? std::optional<double>(best) : std::nullopt;
}

double oracle_slack(const GridOracle& o, Metric m, int dimension) {
    if (dimension < 1) throw InputError("oracle_slack: dimension must be positive");
    if (m == Metric::L1) return 0.0;
    const double d = static_cast<double>(dimension);
    if (o.connectivity == GridConnectivity::Axis) return std::sqrt(d) - 1.0;

    // Free-space grid length for a direction with sorted magnitudes
    // a1 >= a2 >= ... : sum_k (a_k - a_{k+1}) * sqrt(k). Maximize over
    // directions by sampling the positive orthant of the unit sphere.
    auto grid_length = [](std::vector<double> a) {
        std::sort(a.rbegin(), a.rend());
        a.push_back(0.0);
        double len = 0.0;
        for (std::size_t k = 0; k + 1 < a.size(); ++k) len += (a[k] - a[k + 1]) * std::sqrt(static_cast<double>(k + 1));
        return len;
    };
    constexpr int kSteps = 2000;
    const double quarter = std::acos(0.0);
    double worst = 1.0;
    if (dimension == 1) return 0.0;
    if (dimension == 2) {
        for (int i = 0; i <= kSteps; ++i) {
            const double th = quarter * i / kSteps;
            worst = std::max(worst, grid_length({std::cos(th), std::sin(th)}));
        }
        return worst - 1.0;
    }
    if (dimension == 3) {
        for (int i = 0; i <= kSteps / 10; ++i) {
            for (int j = 0; j <= kSteps / 10; ++j) {
                const double th = quarter * i / (kSteps / 10);
                const double ph = quarter * j / (kSteps / 10);
                worst = std::max(worst, grid_length({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}));
            }
        }
        return worst - 1.0;
    }
    return std::sqrt(d) - 1.0;
}

}  // namespace boltspan
