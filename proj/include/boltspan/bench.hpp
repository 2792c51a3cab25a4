#pragma once

// Benchmark protocol: baseline (all features off) against Bolt (all on) on
// the procedural map suite with matched seeds, plus single-feature
// ablations and summary statistics.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boltspan/oracle.hpp"
#include "boltspan/spanner.hpp"

namespace boltspan {

enum class Scale { Desk, Paper };

struct ScaleSettings {
    std::uint64_t termination_failures;
    std::uint64_t quality_delay_failures;
    std::size_t queries;
};

[[nodiscard]] ScaleSettings scale_settings(Scale s) noexcept;
[[nodiscard]] Scale parse_scale(std::string_view text);
[[nodiscard]] std::string_view to_string(Scale s) noexcept;

/// Default parameters for the dimension at the given scale. The stretch
/// factor is always the computed one, so runs without ExactStretch differ
/// only in the features.
[[nodiscard]] BuildParams bench_params(int dimension, Scale scale, FeatureSet features);

/// L1 uses axis moves (exact), L2 axis and diagonal moves. 2D grids use
/// 0.25 units, 3D grids the clearance.
[[nodiscard]] GridOracle default_oracle(int dimension, Metric m);

struct QuerySet {
    std::vector<std::pair<Configuration, Configuration>> pairs;
    std::vector<double> optimal;  // oracle length per pair
};

/// `count` random valid start/goal pairs with their oracle lengths. Pairs
/// the oracle finds disconnected are redrawn.
[[nodiscard]] QuerySet make_queries(const Environment& env, std::size_t count, std::uint64_t seed, Metric m,
                                    const GridOracle& oracle);

struct BenchRecord {
    int map = 0;
    int dim = 2;
    std::uint64_t seed = 0;
    std::string mode;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::uint64_t samples = 0;
    double build_ms = 0.0;
    double q_mean_ms = 0.0;
    double q_mean_expanded = 0.0;
    double quality_ratio_mean = 0.0;  // smoothed path / optimum
    double quality_ratio_max = 0.0;   // raw path / optimum
    std::size_t failures = 0;         // failed plans + stretch violations
    std::size_t failed_plans = 0;
    std::size_t stretch_violations = 0;
};

/// Plans every query on the graph and fills the query columns of `record`.
/// A raw path violates the stretch bound when it exceeds
/// t * optimum + 4 * dense_delta + slack * optimum.
void evaluate_queries(const SparseGraph& graph, const Environment& env, const BuildParams& params, double stretch,
                      const QuerySet& queries, const GridOracle& oracle, BenchRecord& record);

[[nodiscard]] std::uint64_t trial_seed(std::uint64_t base, int map, int dim, int trial) noexcept;
[[nodiscard]] std::uint64_t query_seed(std::uint64_t base, int map, int dim) noexcept;

struct SuiteConfig {
    std::vector<int> dims{2};
    std::vector<int> maps{1, 2, 3, 4, 5};
    int trials = 10;
    Scale scale = Scale::Desk;
    std::optional<std::size_t> queries;  // overrides the scale's query count
    std::uint64_t base_seed = 1;
    bool stop_on_failure = true;
};

using ProgressFn = std::function<void(const BenchRecord&)>;

/// Baseline and Bolt for every dimension, map and trial. Both modes of a
/// trial consume the same sample sequence and answer the same queries.
/// With stop_on_failure the run ends after the first record with failures.
[[nodiscard]] std::vector<BenchRecord> run_suite(const SuiteConfig& config, const ProgressFn& progress = {});

struct AblationConfig {
    int map = 3;
    int dim = 2;
    Feature feature = Feature::QualityDelay;
    int trials = 5;
    Scale scale = Scale::Desk;
    std::optional<std::size_t> queries;
    std::uint64_t base_seed = 1;
    double stretch_without_exact = 1.01;  // used when ExactStretch is removed
};

/// Bolt against Bolt without one feature ("bolt" and "bolt-no-<Feature>").
[[nodiscard]] std::vector<BenchRecord> run_ablation(const AblationConfig& config, const ProgressFn& progress = {});

struct Stat {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, 0 for a single value
};

[[nodiscard]] Stat mean_sd(const std::vector<double>& values);

struct SummaryRow {
    int map = 0;
    int dim = 2;
    std::string mode;
    std::size_t trials = 0;
    Stat vertices, edges, samples, build_ms, q_mean_ms, q_mean_expanded, quality_ratio_mean, quality_ratio_max,
        failures;
};

/// Per (dim, map, mode) means and standard deviations, ordered by dim, map, mode.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

[[nodiscard]] std::string records_csv(const std::vector<BenchRecord>& records);
[[nodiscard]] std::string summary_csv(const std::vector<SummaryRow>& rows);
[[nodiscard]] std::string summary_table(const std::vector<SummaryRow>& rows);

}  // namespace boltspan
