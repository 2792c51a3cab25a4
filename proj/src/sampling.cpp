#include "boltspan/sampling.hpp"

#include <cmath>
#include <string>

namespace boltspan {

double lattice_spacing(double delta, int dimension, double psi, Metric metric) {
    if (!(delta > 0.0)) throw InputError("lattice_spacing: delta must be positive");
    if (dimension < 1) throw InputError("lattice_spacing: dimension must be at least 1");
    if (!(psi >= 0.0)) throw InputError("lattice_spacing: psi must be non-negative");
    const double d = static_cast<double>(dimension);
    const double unpadded =
        metric == Metric::L1 ? 2.0 * delta / d : std::sqrt(4.0 * delta * delta / d);
    const double beta = unpadded - psi;
    if (!(beta > 0.0)) {
        throw InputError("lattice_spacing: psi " + std::to_string(psi) + " leaves a non-positive spacing");
    }
    return beta;
}

namespace {

// Number of lattice indices k >= 0 with origin + beta*k <= hi. The small
// slack keeps exact multiples (e.g. 10 = 2 * 5) from being lost to rounding.
std::size_t axis_count(double lo, double hi, double origin, double beta) {
    if (origin > hi) return 0;
    const double first = origin < lo ? std::ceil((lo - origin) / beta - 1e-12) : 0.0;
    const double last = std::floor((hi - origin) / beta + 1e-12);
    return last >= first ? static_cast<std::size_t>(last - first) + 1 : 0;
}

double axis_origin(const Environment& env, const LatticeSpec& spec, std::size_t axis) {
    const double offset = spec.origin_offset.empty() ? 0.0 : spec.origin_offset.at(axis);
    return env.bounds()[axis].lo + offset;
}

}  // namespace

std::vector<std::size_t> lattice_axis_counts(const Environment& env, const LatticeSpec& spec) {
    if (!(spec.beta > 0.0)) throw InputError("lattice: beta must be positive");
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < env.dimension(); ++i) {
        const auto& b = env.bounds()[i];
        counts.push_back(axis_count(b.lo, b.hi, axis_origin(env, spec, i), spec.beta));
    }
    return counts;
}

std::size_t lattice_point_count(const Environment& env, const LatticeSpec& spec) {
    std::size_t count = 1;
    for (auto n : lattice_axis_counts(env, spec)) count *= n;
    return count;
}

std::vector<Configuration> generate_lattice(const Environment& env, const LatticeSpec& spec) {
    if (!(spec.beta > 0.0)) throw InputError("lattice: beta must be positive");
    const std::size_t d = env.dimension();
    std::vector<std::vector<double>> axes(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& b = env.bounds()[i];
        const double origin = axis_origin(env, spec, i);
        const std::size_t n = axis_count(b.lo, b.hi, origin, spec.beta);
        const double first = origin < b.lo ? std::ceil((b.lo - origin) / spec.beta - 1e-12) : 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = origin + spec.beta * (first + static_cast<double>(k));
            axes[i].push_back(std::min(std::max(x, b.lo), b.hi));
        }
        if (axes[i].empty()) return {};
    }

    std::vector<Configuration> points;
    std::vector<std::size_t> index(d, 0);
    while (true) {
        Configuration q(d);
        for (std::size_t i = 0; i < d; ++i) q[i] = axes[i][index[i]];
        points.push_back(std::move(q));
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (++index[axis] < axes[axis].size()) break;
            index[axis] = 0;
            if (axis == 0) return points;
        }
    }
}

Configuration SampleStream::next_uniform(const Environment& env) {
    Configuration q(env.dimension());
    for (std::size_t i = 0; i < env.dimension(); ++i) {
        const auto& b = env.bounds()[i];
        q[i] = b.lo + unit_double(engine_) * b.length();
    }
    ++total_samples_;
    return q;
}

void SampleStream::record_outcome(bool added_anything) noexcept {
    consecutive_failures_ = added_anything ? 0 : consecutive_failures_ + 1;
}

}  // namespace boltspan
