#pragma once

// Incremental sparse roadmap spanner construction. The four classic
// acceptance criteria (coverage, connectivity, interface, quality) run in
// order on every sample; each graph-size reduction is an independent
// feature flag, and the all-off configuration is the reference behaviour.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "boltspan/cspace.hpp"
#include "boltspan/graph.hpp"
#include "boltspan/sampling.hpp"

namespace boltspan {

enum class Feature : std::uint32_t {
    LatticeSeed = 1u << 0,
    ExactStretch = 1u << 1,
    QualityDelay = 1u << 2,
    ClearNearbyEdges = 1u << 3,
    DirectConnectivity = 1u << 4,
    SmoothedPathCheck = 1u << 5,
    L1QualitySkip = 1u << 6,
};

inline constexpr Feature kAllFeatures[] = {
    Feature::LatticeSeed,        Feature::ExactStretch,      Feature::QualityDelay,  Feature::ClearNearbyEdges,
    Feature::DirectConnectivity, Feature::SmoothedPathCheck, Feature::L1QualitySkip,
};

[[nodiscard]] std::string_view feature_name(Feature f) noexcept;
/// Accepts the CamelCase name or its lowercase/snake_case spelling.
[[nodiscard]] Feature parse_feature(std::string_view name);

class FeatureSet {
public:
    constexpr FeatureSet() = default;

    [[nodiscard]] static constexpr FeatureSet none() { return FeatureSet(); }
    [[nodiscard]] static constexpr FeatureSet all() {
        FeatureSet s;
        for (Feature f : kAllFeatures) s.bits_ |= static_cast<std::uint32_t>(f);
        return s;
    }
    /// "all", "none", or a comma-separated list of feature names.
    [[nodiscard]] static FeatureSet parse(std::string_view text);

    [[nodiscard]] constexpr bool has(Feature f) const noexcept { return (bits_ & static_cast<std::uint32_t>(f)) != 0; }
    [[nodiscard]] constexpr FeatureSet with(Feature f) const noexcept {
        FeatureSet s = *this;
        s.bits_ |= static_cast<std::uint32_t>(f);
        return s;
    }
    [[nodiscard]] constexpr FeatureSet without(Feature f) const noexcept {
        FeatureSet s = *this;
        s.bits_ &= ~static_cast<std::uint32_t>(f);
        return s;
    }
    [[nodiscard]] std::string to_string() const;

    friend constexpr bool operator==(FeatureSet, FeatureSet) = default;

private:
    std::uint32_t bits_ = 0;
};

struct BuildParams {
    double delta = 6.93;        // visibility radius
    double dense_delta = 0.693; // interface support radius
    double stretch = 3.36;      // used as-is when ExactStretch is off
    double psi = 0.01;          // lattice penetration distance
    Metric metric = Metric::L1;
    int dimension = 2;
    std::uint64_t termination_failures = 3000;
    std::uint64_t quality_delay_failures = 1000;
    int stretch_denominator_k = 4;
    FeatureSet features = FeatureSet::all();
    double motion_resolution = 0.1;
    int near_samples_per_dimension = 2;

    /// Reference parameters for d = 2 or 3 (other d scale delta with sqrt(d)).
    [[nodiscard]] static BuildParams defaults_for(int dimension);

    [[nodiscard]] double beta() const;
    /// compute_stretch(...) when ExactStretch is set, `stretch` otherwise.
    [[nodiscard]] double effective_stretch() const;
    /// Throws InputError on inconsistent parameters.
    void validate() const;
};

/// d*beta / (beta - k*dense_delta). Throws InputError when the denominator
/// is not positive.
[[nodiscard]] double compute_stretch(int dimension, double beta, double dense_delta, int k);

enum class OutcomeKind { AddedVertex, AddedEdge, AddedBoth, Rejected };
enum class Criterion { Coverage, Connectivity, Interface, Quality, None };

struct CriterionOutcome {
    OutcomeKind kind = OutcomeKind::Rejected;
    Criterion reason = Criterion::None;

    [[nodiscard]] bool added() const noexcept { return kind != OutcomeKind::Rejected; }
    [[nodiscard]] static CriterionOutcome rejected() { return {}; }
    friend bool operator==(const CriterionOutcome&, const CriterionOutcome&) = default;
};

[[nodiscard]] std::string_view to_string(OutcomeKind k) noexcept;
[[nodiscard]] std::string_view to_string(Criterion c) noexcept;

struct BuildStats {
    std::uint64_t samples = 0;
    std::size_t lattice_points = 0;
    std::size_t lattice_vertices = 0;
    std::size_t lattice_edges = 0;
    std::size_t sampled_vertices = 0;  // vertices added after the lattice phase
    std::size_t edges_cleared = 0;
    std::size_t quality_skips = 0;
    std::size_t smoothed_rejections = 0;
    std::uint64_t quality_enabled_at = 0;  // sample index, 0 when enabled from the start
    std::map<Criterion, std::size_t> additions;
    double build_ms = 0.0;
};

class SpannerBuilder {
public:
    SpannerBuilder(Environment env, BuildParams params);

    [[nodiscard]] const SparseGraph& graph() const noexcept { return graph_; }
    [[nodiscard]] SparseGraph& mutable_graph() noexcept { return graph_; }
    [[nodiscard]] const BuildParams& params() const noexcept { return params_; }
    [[nodiscard]] const Environment& environment() const noexcept { return env_; }
    [[nodiscard]] double stretch() const noexcept { return stretch_; }
    [[nodiscard]] const BuildStats& stats() const noexcept { return stats_; }
    [[nodiscard]] BuildStats& mutable_stats() noexcept { return stats_; }

    /// Seeds the generator used for local sampling around each sample.
    void seed_local_sampler(std::uint64_t seed) { local_engine_.seed(seed); }

    /// Adds every valid lattice point as a vertex, then joins axis-adjacent
    /// lattice vertices whose connecting motion is valid. Returns the number
    /// of vertices added.
    std::size_t seed_lattice();

    /// Runs coverage, connectivity, interface and (when enabled) quality in
    /// that order; the first criterion that changes the graph wins.
    CriterionOutcome insert_sample(const Configuration& q, bool quality_enabled);

    // Individual criteria, each evaluated against the current graph.
    CriterionOutcome check_coverage(const Configuration& q);
    CriterionOutcome check_connectivity(const Configuration& q);
    CriterionOutcome check_interface(const Configuration& q);
    CriterionOutcome check_quality(const Configuration& q);

    /// Removes every edge whose segment passes within delta of the vertex,
    /// keeping those whose removal would disconnect their endpoints.
    std::size_t clear_nearby_edges(VertexId v);

    /// Representative of q: the nearest vertex within delta that q can see.
    [[nodiscard]] std::optional<VertexId> representative(const Configuration& q) const;

    /// Number of blocked-interface witnesses waiting for a partner.
    [[nodiscard]] std::size_t pending_witnesses() const;

private:
    struct Neighborhood {
        std::vector<VertexId> in_range;  // within delta, nearest first
        std::vector<VertexId> visible;   // subset with a valid motion from q
    };

    [[nodiscard]] Neighborhood neighborhood(const Configuration& q) const;
    CriterionOutcome coverage(const Configuration& q, const Neighborhood& nb);
    CriterionOutcome connectivity(const Configuration& q, const Neighborhood& nb);
    CriterionOutcome interface(const Configuration& q, const Neighborhood& nb);
    CriterionOutcome quality(const Configuration& q, const Neighborhood& nb);

    VertexId add_vertex(const Configuration& q, VertexKind kind);
    void add_edge(VertexId a, VertexId b, EdgeKind kind);
    void update_supports(VertexId owner, const Configuration& interior, VertexId other,
                         const Configuration& exterior);
    bool check_add_paths(VertexId v);
    bool add_shortcut(VertexId v, VertexId a, VertexId b, InterfaceRecord& record);
    [[nodiscard]] std::optional<double> shortest_between(VertexId a, VertexId b);
    [[nodiscard]] bool reachable(VertexId from, VertexId to) const;
    [[nodiscard]] bool valid_motion(const Configuration& a, const Configuration& b) const {
        return validator_.check_motion(a, b, env_);
    }

    Environment env_;
    BuildParams params_;
    MotionValidator validator_;
    double stretch_;
    SparseGraph graph_;
    BuildStats stats_;
    std::mt19937_64 local_engine_;
    bool seeding_ = false;
    std::map<NeighborPair, std::vector<Configuration>> blocked_witnesses_;
    std::unordered_map<std::uint64_t, std::uint64_t> skip_cache_;  // pair -> removal epoch
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, double>> distance_cache_;
};

struct BuildResult {
    SparseGraph graph;
    BuildStats stats;
    double stretch = 0.0;
};

/// Invoked after every random-phase sample with the running sample count.
using BuildObserver = std::function<void(const SpannerBuilder&, std::uint64_t)>;

/// Lattice phase (when LatticeSeed is set) followed by random sampling
/// until `termination_failures` consecutive samples change nothing.
[[nodiscard]] BuildResult build(const Environment& env, const BuildParams& params, SampleStream& stream,
                                const BuildObserver& observer = {});

}  // namespace boltspan
