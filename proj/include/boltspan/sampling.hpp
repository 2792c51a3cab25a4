#pragma once

// Lattice seeding and the deterministic uniform sample stream.

#include <cstdint>
#include <random>
#include <vector>

#include "boltspan/cspace.hpp"

namespace boltspan {

/// Spacing of the cubic lattice that lets neighbouring visibility regions
/// overlap by exactly `psi`. L1: 2*delta/d - psi. L2: sqrt(4*delta^2/d) - psi.
/// Throws InputError unless delta > 0, d >= 1 and 0 <= psi < the unpadded spacing.
[[nodiscard]] double lattice_spacing(double delta, int dimension, double psi, Metric metric);

struct LatticeSpec {
    double beta = 1.0;
    std::vector<double> origin_offset;  // empty means the lower bounds corner
};

/// All lattice points origin + beta*k inside the bounds, last axis varying
/// fastest. Points inside obstacles are kept.
[[nodiscard]] std::vector<Configuration> generate_lattice(const Environment& env, const LatticeSpec& spec);

/// Points per axis, in axis order.
[[nodiscard]] std::vector<std::size_t> lattice_axis_counts(const Environment& env, const LatticeSpec& spec);

/// Number of points generate_lattice would return.
[[nodiscard]] std::size_t lattice_point_count(const Environment& env, const LatticeSpec& spec);

/// Portable uniform double in [0, 1) from a 64-bit engine draw.
[[nodiscard]] inline double unit_double(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Seeded uniform sampler over the environment bounds together with the
/// consecutive-failure bookkeeping that drives termination.
class SampleStream {
public:
    explicit SampleStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    [[nodiscard]] Configuration next_uniform(const Environment& env);
    void record_outcome(bool added_anything) noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t consecutive_failures() const noexcept { return consecutive_failures_; }
    [[nodiscard]] std::uint64_t total_samples() const noexcept { return total_samples_; }

    void set_consecutive_failures(std::uint64_t n) noexcept { consecutive_failures_ = n; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::uint64_t consecutive_failures_ = 0;
    std::uint64_t total_samples_ = 0;
};

}  // namespace boltspan
