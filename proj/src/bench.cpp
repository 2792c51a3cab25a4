#include "boltspan/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "boltspan/maps.hpp"
#include "boltspan/query.hpp"

namespace boltspan {

namespace {

std::uint64_t splitmix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

BenchRecord build_and_measure(const Environment& env, const BuildParams& params, std::uint64_t seed,
                              const QuerySet& queries, const GridOracle& oracle, int map, int dim,
                              std::string mode) {
    SampleStream stream(seed);
    const BuildResult built = build(env, params, stream);
    BenchRecord record;
    record.map = map;
    record.dim = dim;
    record.seed = seed;
    record.mode = std::move(mode);
    record.vertices = built.graph.num_vertices();
    record.edges = built.graph.num_edges();
    record.samples = built.stats.samples;
    record.build_ms = built.stats.build_ms;
    evaluate_queries(built.graph, env, params, built.stretch, queries, oracle, record);
    return record;
}

}  // namespace

ScaleSettings scale_settings(Scale s) noexcept {
    if (s == Scale::Paper) return {15000, 5000, 1000};
    return {3000, 1000, 100};
}

Scale parse_scale(std::string_view text) {
    if (text == "desk") return Scale::Desk;
    if (text == "paper") return Scale::Paper;
    throw InputError("unknown scale '" + std::string(text) + "' (expected desk or paper)");
}

std::string_view to_string(Scale s) noexcept { return s == Scale::Paper ? "paper" : "desk"; }

BuildParams bench_params(int dimension, Scale scale, FeatureSet features) {
    BuildParams p = BuildParams::defaults_for(dimension);
    const ScaleSettings s = scale_settings(scale);
    p.termination_failures = s.termination_failures;
    p.quality_delay_failures = s.quality_delay_failures;
    p.features = features;
    p.stretch = compute_stretch(dimension, p.beta(), p.dense_delta, p.stretch_denominator_k);
    return p;
}

GridOracle default_oracle(int dimension, Metric m) {
    GridOracle o;
    o.resolution = dimension == 2 ? 0.25 : 1.0;
    o.connectivity = m == Metric::L1 ? GridConnectivity::Axis : GridConnectivity::AxisDiagonal;
    return o;
}

QuerySet make_queries(const Environment& env, std::size_t count, std::uint64_t seed, Metric m,
                      const GridOracle& oracle) {
    QuerySet set;
    SampleStream stream(seed);
    auto valid_sample = [&] {
        for (int attempt = 0; attempt < 1'000'000; ++attempt) {
            Configuration q = stream.next_uniform(env);
            if (env.is_valid(q)) return q;
        }
        throw InputError("queries: the environment has no free space");
    };
    std::size_t disconnected = 0;
    while (set.pairs.size() < count) {
        Configuration start = valid_sample();
        Configuration goal = valid_sample();
        const auto optimal = oracle_shortest(env, start, goal, m, oracle);
        if (!optimal) {
            // Pairs in separate free regions have no answer to check against.
            if (++disconnected > 100 * count) throw InputError("queries: free space is too fragmented");
            continue;
        }
        set.pairs.emplace_back(std::move(start), std::move(goal));
        set.optimal.push_back(*optimal);
    }
    return set;
}

void evaluate_queries(const SparseGraph& graph, const Environment& env, const BuildParams& params, double stretch,
                      const QuerySet& queries, const GridOracle& oracle, BenchRecord& record) {
    const QueryOptions options{params.delta, params.motion_resolution};
    const MotionValidator validator{params.motion_resolution};
    const double slack = oracle_slack(oracle, params.metric, params.dimension);
    double total_ms = 0.0;
    double total_expanded = 0.0;
    double ratio_sum = 0.0;
    std::size_t ratio_count = 0;
    std::size_t answered = 0;
    record.quality_ratio_max = 0.0;
    record.failed_plans = 0;
    record.stretch_violations = 0;
    for (std::size_t i = 0; i < queries.pairs.size(); ++i) {
        const auto& [start, goal] = queries.pairs[i];
        const double optimal = queries.optimal[i];
        const auto result = plan(graph, env, start, goal, options);
        if (!result) {
            ++record.failed_plans;
            continue;
        }
        ++answered;
        total_ms += result->elapsed_ms;
        total_expanded += static_cast<double>(result->expanded);
        const double bound = stretch * optimal + 4.0 * params.dense_delta + slack * optimal;
        if (result->length > bound + 1e-9) ++record.stretch_violations;
        if (optimal > 0.0) {
            const auto smoothed = smooth(result->path, env, validator, params.metric);
            ratio_sum += path_length(smoothed, params.metric) / optimal;
            ++ratio_count;
            record.quality_ratio_max = std::max(record.quality_ratio_max, result->length / optimal);
        }
    }
    record.q_mean_ms = answered ? total_ms / static_cast<double>(answered) : 0.0;
    record.q_mean_expanded = answered ? total_expanded / static_cast<double>(answered) : 0.0;
    record.quality_ratio_mean = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;
    record.failures = record.failed_plans + record.stretch_violations;
}

std::uint64_t trial_seed(std::uint64_t base, int map, int dim, int trial) noexcept {
    return splitmix(splitmix(base) ^ (static_cast<std::uint64_t>(map) << 40) ^
                    (static_cast<std::uint64_t>(dim) << 32) ^ static_cast<std::uint64_t>(trial));
}

std::uint64_t query_seed(std::uint64_t base, int map, int dim) noexcept {
    return splitmix(trial_seed(base, map, dim, 0) ^ 0x51ed270b27a3c1f9ULL);
}

std::vector<BenchRecord> run_suite(const SuiteConfig& config, const ProgressFn& progress) {
    if (config.trials < 1) throw InputError("bench: trials must be positive");
    std::vector<BenchRecord> records;
    const std::size_t query_count = config.queries.value_or(scale_settings(config.scale).queries);
    for (int dim : config.dims) {
        for (int map : config.maps) {
            const Environment env = generate_map(map, dim);
            const BuildParams baseline = bench_params(dim, config.scale, FeatureSet::none());
            const BuildParams bolt = bench_params(dim, config.scale, FeatureSet::all());
            const GridOracle oracle = default_oracle(dim, bolt.metric);
            const QuerySet queries = make_queries(env, query_count, query_seed(config.base_seed, map, dim), bolt.metric, oracle);
            for (int trial = 0; trial < config.trials; ++trial) {
                const std::uint64_t seed = trial_seed(config.base_seed, map, dim, trial);
                for (const auto& [mode, params] : {std::pair{"baseline", baseline}, std::pair{"bolt", bolt}}) {
                    records.push_back(build_and_measure(env, params, seed, queries, oracle, map, dim, mode));
                    if (progress) progress(records.back());
                    if (config.stop_on_failure && records.back().failures > 0) return records;
                }
            }
        }
    }
    return records;
}

std::vector<BenchRecord> run_ablation(const AblationConfig& config, const ProgressFn& progress) {
    if (config.trials < 1) throw InputError("ablate: trials must be positive");
    const Environment env = generate_map(config.map, config.dim);
    const BuildParams bolt = bench_params(config.dim, config.scale, FeatureSet::all());
    BuildParams reduced = bench_params(config.dim, config.scale, FeatureSet::all().without(config.feature));
    if (config.feature == Feature::ExactStretch) reduced.stretch = config.stretch_without_exact;
    const GridOracle oracle = default_oracle(config.dim, bolt.metric);
    const std::size_t query_count = config.queries.value_or(scale_settings(config.scale).queries);
    const QuerySet queries =
        make_queries(env, query_count, query_seed(config.base_seed, config.map, config.dim), bolt.metric, oracle);
    const std::string reduced_mode = "bolt-no-" + std::string(feature_name(config.feature));

    std::vector<BenchRecord> records;
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t seed = trial_seed(config.base_seed, config.map, config.dim, trial);
        for (const auto& [mode, params] : {std::pair{std::string("bolt"), bolt}, std::pair{reduced_mode, reduced}}) {
            records.push_back(build_and_measure(env, params, seed, queries, oracle, config.map, config.dim, mode));
            if (progress) progress(records.back());
        }
    }
    return records;
}

Stat mean_sd(const std::vector<double>& values) {
    Stat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
    if (records.empty()) throw InputError("summarize: no records");
    std::map<std::tuple<int, int, std::string>, std::vector<const BenchRecord*>> groups;
    for (const auto& r : records) groups[{r.dim, r.map, r.mode}].push_back(&r);
    std::vector<SummaryRow> rows;
    for (const auto& [key, group] : groups) {
        SummaryRow row;
        row.dim = std::get<0>(key);
        row.map = std::get<1>(key);
        row.mode = std::get<2>(key);
        row.trials = group.size();
        auto stat = [&](auto field) {
            std::vector<double> values;
            for (const BenchRecord* r : group) values.push_back(static_cast<double>(field(*r)));
            return mean_sd(values);
        };
        row.vertices = stat([](const BenchRecord& r) { return r.vertices; });
        row.edges = stat([](const BenchRecord& r) { return r.edges; });
        row.samples = stat([](const BenchRecord& r) { return r.samples; });
        row.build_ms = stat([](const BenchRecord& r) { return r.build_ms; });
        row.q_mean_ms = stat([](const BenchRecord& r) { return r.q_mean_ms; });
        row.q_mean_expanded = stat([](const BenchRecord& r) { return r.q_mean_expanded; });
        row.quality_ratio_mean = stat([](const BenchRecord& r) { return r.quality_ratio_mean; });
        row.quality_ratio_max = stat([](const BenchRecord& r) { return r.quality_ratio_max; });
        row.failures = stat([](const BenchRecord& r) { return r.failures; });
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string records_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "map,dim,seed,mode,vertices,edges,samples,build_ms,q_mean_ms,q_mean_expanded,quality_ratio_mean,"
           "quality_ratio_max,failures\n";
    for (const auto& r : records) {
        out << r.map << ',' << r.dim << ',' << r.seed << ',' << r.mode << ',' << r.vertices << ',' << r.edges << ','
            << r.samples << ',' << fmt(r.build_ms) << ',' << fmt(r.q_mean_ms) << ',' << fmt(r.q_mean_expanded) << ','
            << fmt(r.quality_ratio_mean) << ',' << fmt(r.quality_ratio_max) << ',' << r.failures << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "map,dim,mode,trials";
    for (const char* name : {"vertices", "edges", "samples", "build_ms", "q_mean_ms", "q_mean_expanded",
                             "quality_ratio_mean", "quality_ratio_max", "failures"}) {
        out << ',' << name << "_mean," << name << "_sd";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << r.map << ',' << r.dim << ',' << r.mode << ',' << r.trials;
        for (const Stat* s : {&r.vertices, &r.edges, &r.samples, &r.build_ms, &r.q_mean_ms, &r.q_mean_expanded,
                              &r.quality_ratio_mean, &r.quality_ratio_max, &r.failures}) {
            out << ',' << fmt(s->mean) << ',' << fmt(s->sd);
        }
        out << '\n';
    }
    return out.str();
}

std::string summary_table(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-4s %-28s %6s %16s %16s %14s %10s %8s\n", "dim", "map", "mode", "trials",
                  "vertices", "edges", "expanded", "quality", "failures");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-4d %-4d %-28s %6zu %8.1f ±%6.1f %8.1f ±%6.1f %7.1f ±%5.1f %10.4f %8.1f\n",
                      r.dim, r.map, r.mode.c_str(), r.trials, r.vertices.mean, r.vertices.sd, r.edges.mean,
                      r.edges.sd, r.q_mean_expanded.mean, r.q_mean_expanded.sd, r.quality_ratio_mean.mean,
                      r.failures.mean);
        out << line;
    }
    return out.str();
}

}  // namespace boltspan
