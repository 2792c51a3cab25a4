#pragma once

// Configuration-space model: configurations, metrics, box-obstacle
// environments and straight-line motion validation.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boltspan {

/// Raised for malformed user input (files, parameters, configurations).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point in the d-dimensional configuration space.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::size_t dimension, double fill = 0.0) : coords_(dimension, fill) {}
    Configuration(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Configuration(std::vector<double> coords) : coords_(std::move(coords)) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return coords_[i]; }
    double& operator[](std::size_t i) noexcept { return coords_[i]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] auto begin() const noexcept { return coords_.begin(); }
    [[nodiscard]] auto end() const noexcept { return coords_.end(); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

private:
    std::vector<double> coords_;
};

enum class Metric { L1, L2 };

[[nodiscard]] std::string_view to_string(Metric m) noexcept;
/// Accepts "l1"/"L1"/"l2"/"L2".
[[nodiscard]] Metric parse_metric(std::string_view text);

/// Throws InputError when the dimensions differ.
[[nodiscard]] double distance(const Configuration& a, const Configuration& b, Metric m);

/// Linear interpolation a + s (b - a).
[[nodiscard]] Configuration interpolate(const Configuration& a, const Configuration& b, double s);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double length() const noexcept { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed axis-aligned box.
struct Box {
    Configuration min;
    Configuration max;

    [[nodiscard]] bool contains(const Configuration& q) const noexcept;
    [[nodiscard]] Box inflated(double margin) const;
    friend bool operator==(const Box&, const Box&) = default;
};

/// Bounded workspace with axis-aligned box obstacles. A configuration is
/// valid when it lies inside the bounds and outside every obstacle grown
/// by `clearance` on all faces.
class Environment {
public:
    Environment() = default;
    Environment(std::vector<Interval> bounds, std::vector<Box> obstacles, double clearance);

    /// Obstacle-free environment over [lo, hi]^dimension.
    [[nodiscard]] static Environment empty(std::size_t dimension, double lo, double hi);

    [[nodiscard]] std::size_t dimension() const noexcept { return bounds_.size(); }
    [[nodiscard]] const std::vector<Interval>& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const std::vector<Box>& obstacles() const noexcept { return obstacles_; }
    [[nodiscard]] const std::vector<Box>& inflated_obstacles() const noexcept { return inflated_; }
    [[nodiscard]] double clearance() const noexcept { return clearance_; }

    [[nodiscard]] bool in_bounds(const Configuration& q) const noexcept;
    [[nodiscard]] bool is_valid(const Configuration& q) const noexcept;

    /// Same geometry with a different clearance.
    [[nodiscard]] Environment with_clearance(double clearance) const;

    friend bool operator==(const Environment& a, const Environment& b) {
        return a.bounds_ == b.bounds_ && a.obstacles_ == b.obstacles_ && a.clearance_ == b.clearance_;
    }

private:
    void validate() const;

    std::vector<Interval> bounds_;
    std::vector<Box> obstacles_;
    std::vector<Box> inflated_;
    double clearance_ = 0.0;
};

/// Parses the environment JSON schema; errors carry the offending line.
[[nodiscard]] Environment parse_environment(std::string_view json_text);
[[nodiscard]] Environment load_environment(const std::string& path);
[[nodiscard]] std::string environment_to_json(const Environment& env);
void save_environment(const Environment& env, const std::string& path);

/// Discretized straight-line local planner.
struct MotionValidator {
    double resolution = 0.1;

    /// True iff every interpolated state at spacing <= resolution along a->b,
    /// endpoints included, is valid. Symmetric in its endpoints.
    [[nodiscard]] bool check_motion(const Configuration& a, const Configuration& b,
                                    const Environment& env) const;
};

/// Distance from point p to the segment [a, b] under the metric.
[[nodiscard]] double point_segment_distance(const Configuration& p, const Configuration& a,
                                            const Configuration& b, Metric m);

/// Sum of consecutive metric distances.
[[nodiscard]] double path_length(std::span<const Configuration> path, Metric m);

/// Shortcut smoothing. Sweeps i ascending and j descending, replacing
/// path[i..j] by the direct segment when it is valid and not longer, until
/// a full sweep changes nothing. Endpoints are preserved.
[[nodiscard]] std::vector<Configuration> shortcut_path(std::vector<Configuration> path,
                                                       const Environment& env,
                                                       const MotionValidator& validator, Metric m);

}  // namespace boltspan
