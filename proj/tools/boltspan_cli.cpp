// boltspan command-line tool: build, query, bench, ablate, render, validate
// and maps subcommands. Exit codes: 0 success, 1 no path or failed checks,
// 2 bad input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boltspan/bench.hpp"
#include "boltspan/maps.hpp"
#include "boltspan/query.hpp"
#include "boltspan/roadmap_io.hpp"
#include "boltspan/spanner.hpp"
#include "boltspan/validate.hpp"
#include "boltspan/viz.hpp"

namespace fs = std::filesystem;
using namespace boltspan;

namespace {

constexpr int kOk = 0;
constexpr int kNoPath = 1;
constexpr int kBadInput = 2;

Configuration parse_point(const std::string& text) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InputError("bad coordinate '" + item + "' in '" + text + "'");
        }
        if (used != item.size()) throw InputError("bad coordinate '" + item + "' in '" + text + "'");
        coords.push_back(x);
    }
    if (coords.empty()) throw InputError("empty configuration");
    return Configuration(std::move(coords));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw InputError("bad integer '" + item + "'");
        }
        if (used != item.size()) throw InputError("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InputError("empty list");
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
    if (!out) throw InputError("cannot write " + path.string());
}

void print_path(const std::vector<Configuration>& path) {
    for (const auto& q : path) {
        std::string line;
        char buf[32];
        for (std::size_t i = 0; i < q.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", q[i]);
            line += buf;
        }
        std::printf("  %s\n", line.c_str());
    }
}

struct BuildArgs {
    std::string env, out, metric = "l1", flags = "all";
    double delta = 0.0;
    double dense_delta = 0.0;
    double psi = 0.01;
    double stretch = 0.0;
    std::uint64_t seed = 1;
    std::uint64_t term_failures = 3000;
    std::uint64_t quality_delay = 0;
    int stretch_k = 4;
};

int run_build(const BuildArgs& a) {
    const Environment env = load_environment(a.env);
    BuildParams p;
    p.dimension = static_cast<int>(env.dimension());
    p.delta = a.delta;
    p.dense_delta = a.dense_delta > 0.0 ? a.dense_delta : a.delta / 10.0;
    p.psi = a.psi;
    p.metric = parse_metric(a.metric);
    p.features = FeatureSet::parse(a.flags);
    p.termination_failures = a.term_failures;
    p.quality_delay_failures = a.quality_delay > 0 ? a.quality_delay : a.term_failures / 3;
    p.stretch_denominator_k = a.stretch_k;
    p.stretch = a.stretch > 0.0 ? a.stretch : compute_stretch(p.dimension, p.beta(), p.dense_delta, a.stretch_k);
    p.validate();

    SampleStream stream(a.seed);
    const BuildResult r = build(env, p, stream);
    save_roadmap(a.out, r.graph, RoadmapHeader{env.dimension(), p.metric, p.delta, p.dense_delta, r.stretch});
    std::printf("beta=%g\n", p.beta());
    std::printf("stretch=%.4f\n", r.stretch);
    std::printf("features=%s\n", p.features.to_string().c_str());
    std::printf("vertices=%zu\n", r.graph.num_vertices());
    std::printf("edges=%zu\n", r.graph.num_edges());
    std::printf("lattice_vertices=%zu\n", r.stats.lattice_vertices);
    std::printf("sampled_vertices=%zu\n", r.stats.sampled_vertices);
    std::printf("samples=%llu\n", static_cast<unsigned long long>(r.stats.samples));
    std::printf("build_ms=%.1f\n", r.stats.build_ms);
    return kOk;
}

struct QueryArgs {
    std::string graph, env, start, goal, repair_env, svg, slice;
    bool smooth = false;
};

int run_query(const QueryArgs& a) {
    const Roadmap map = load_roadmap(a.graph);
    const Environment base = load_environment(a.env);
    const Environment env = a.repair_env.empty() ? base : load_environment(a.repair_env);
    if (env.dimension() != map.header.dimension) throw InputError("roadmap and environment dimensions differ");
    const Configuration start = parse_point(a.start);
    const Configuration goal = parse_point(a.goal);
    const QueryOptions options{map.header.delta, 0.1};
    const auto result = a.repair_env.empty() ? plan(map.graph, env, start, goal, options)
                                             : plan_with_repair(map.graph, env, start, goal, options);
    if (!result) {
        std::fprintf(stderr, "no path\n");
        return kNoPath;
    }
    std::vector<Configuration> path = result->path;
    std::printf("length=%.6f\n", result->length);
    std::printf("expanded=%zu\n", result->expanded);
    std::printf("roadmap_vertices=%zu\n", result->roadmap_path.size());
    if (a.smooth) {
        path = smooth(path, env, MotionValidator{0.1}, map.header.metric);
        std::printf("smoothed_length=%.6f\n", path_length(path, map.header.metric));
    }
    std::printf("path:\n");
    print_path(path);
    if (!a.svg.empty()) {
        RenderOptions o;
        if (!a.slice.empty()) parse_slice(a.slice, o);
        write_file(a.svg, render_svg(env, &map.graph, &path, o));
    }
    return kOk;
}

struct BenchArgs {
    std::string dims = "2", maps = "1,2,3,4,5", scale = "desk", out = "bench_out";
    int trials = 10;
    std::size_t queries = 0;
    std::uint64_t seed = 1;
    bool keep_going = false;
};

int run_bench(const BenchArgs& a) {
    SuiteConfig c;
    c.dims = parse_int_list(a.dims);
    c.maps = parse_int_list(a.maps);
    c.trials = a.trials;
    c.scale = parse_scale(a.scale);
    if (a.queries > 0) c.queries = a.queries;
    c.base_seed = a.seed;
    c.stop_on_failure = !a.keep_going;
    if (c.trials < 1) throw InputError("--trials must be positive");
    for (int d : c.dims)
        if (d != 2 && d != 3) throw InputError("--dims accepts 2 and 3");
    for (int m : c.maps)
        if (m < 1 || m > kMapCount) throw InputError("--maps accepts 1.." + std::to_string(kMapCount));

    const auto records = run_suite(c, [](const BenchRecord& r) {
        std::fprintf(stderr, "map %d %dD seed %llu %-8s vertices=%zu edges=%zu failures=%zu\n", r.map, r.dim,
                     static_cast<unsigned long long>(r.seed), r.mode.c_str(), r.vertices, r.edges, r.failures);
    });
    const auto rows = summarize(records);
    const fs::path out(a.out);
    write_file(out / "records.csv", records_csv(records));
    write_file(out / "summary.csv", summary_csv(rows));
    const std::string table = summary_table(rows);
    write_file(out / "summary.txt", table);
    std::fputs(table.c_str(), stdout);
    std::size_t failures = 0;
    for (const auto& r : records) failures += r.failures;
    if (failures > 0) {
        std::fprintf(stderr, "%zu failed or out-of-bound queries\n", failures);
        return kNoPath;
    }
    return kOk;
}

struct AblateArgs {
    std::string flag, scale = "desk", out = "ablation_out";
    int map = 3;
    int dim = 2;
    int trials = 5;
    std::size_t queries = 0;
    std::uint64_t seed = 1;
    double stretch_without_exact = 1.01;
};

int run_ablate(const AblateArgs& a) {
    AblationConfig c;
    c.map = a.map;
    c.dim = a.dim;
    c.feature = parse_feature(a.flag);
    c.trials = a.trials;
    c.scale = parse_scale(a.scale);
    if (a.queries > 0) c.queries = a.queries;
    c.base_seed = a.seed;
    c.stretch_without_exact = a.stretch_without_exact;
    if (c.trials < 1) throw InputError("--trials must be positive");
    if (c.map < 1 || c.map > kMapCount) throw InputError("--map accepts 1.." + std::to_string(kMapCount));
    if (c.dim != 2 && c.dim != 3) throw InputError("--dim accepts 2 and 3");

    const auto records = run_ablation(c, [](const BenchRecord& r) {
        std::fprintf(stderr, "seed %llu %-28s vertices=%zu edges=%zu\n", static_cast<unsigned long long>(r.seed),
                     r.mode.c_str(), r.vertices, r.edges);
    });
    const auto rows = summarize(records);
    const fs::path out(a.out);
    const std::string name(feature_name(c.feature));
    write_file(out / ("ablation_" + name + ".csv"), records_csv(records));
    write_file(out / ("ablation_" + name + "_summary.csv"), summary_csv(rows));
    std::fputs(summary_table(rows).c_str(), stdout);
    double with = 0.0, without = 0.0;
    for (const auto& row : rows) (row.mode == "bolt" ? with : without) = row.edges.mean;
    std::printf("edges with %s: %.1f, without: %.1f, change when removed: %+.1f%%\n", name.c_str(), with, without,
                with > 0.0 ? 100.0 * (without - with) / with : 0.0);
    return kOk;
}

struct RenderArgs {
    std::string graph, env, out, slice, compare, caption;
};

int run_render(const RenderArgs& a) {
    const Environment env = load_environment(a.env);
    const Roadmap map = load_roadmap(a.graph);
    if (env.dimension() != map.header.dimension) throw InputError("roadmap and environment dimensions differ");
    RenderOptions o;
    if (!a.slice.empty()) parse_slice(a.slice, o);
    if (a.compare.empty()) {
        o.caption = a.caption;
        write_file(a.out, render_svg(env, &map.graph, nullptr, o));
    } else {
        const Roadmap other = load_roadmap(a.compare);
        if (env.dimension() != other.header.dimension) throw InputError("roadmap and environment dimensions differ");
        write_file(a.out, render_side_by_side(env, Panel{&map.graph, nullptr, fs::path(a.graph).stem().string()},
                                              Panel{&other.graph, nullptr, fs::path(a.compare).stem().string()}, o));
    }
    return kOk;
}

struct ValidateArgs {
    std::string graph, env;
    std::size_t queries = 100;
    std::uint64_t seed = 1;
};

int run_validate(const ValidateArgs& a) {
    const Environment env = load_environment(a.env);
    const Roadmap map = load_roadmap(a.graph);
    const ValidationReport r = validate_roadmap(map, env, a.queries, a.seed);
    std::fputs(to_string(r).c_str(), stdout);
    return r.violations() == 0 ? kOk : kNoPath;
}

int run_maps(const std::string& out, const std::string& dims) {
    for (int d : parse_int_list(dims)) {
        if (d != 2 && d != 3) throw InputError("--dims accepts 2 and 3");
        for (int id = 1; id <= kMapCount; ++id) {
            const fs::path path = fs::path(out) / map_file_name(id, d);
            write_file(path, environment_to_json(generate_map(id, d)));
            std::printf("%s\n", path.string().c_str());
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse roadmap spanner construction, queries and benchmarks"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build_cmd = app.add_subcommand("build", "Build a roadmap for an environment");
    build_cmd->add_option("--env", b.env, "Environment JSON")->required();
    build_cmd->add_option("--delta", b.delta, "Visibility radius")->required()->check(CLI::PositiveNumber);
    build_cmd->add_option("--dense-delta", b.dense_delta, "Interface support radius (default delta/10)")
        ->check(CLI::PositiveNumber);
    build_cmd->add_option("--psi", b.psi, "Lattice penetration distance")->capture_default_str();
    build_cmd->add_option("--metric", b.metric, "l1 or l2")->capture_default_str();
    build_cmd->add_option("--flags", b.flags, "all, none, or a comma list of features")->capture_default_str();
    build_cmd->add_option("--seed", b.seed, "Sample stream seed")->capture_default_str();
    build_cmd->add_option("--term-failures", b.term_failures, "Consecutive failures before stopping")
        ->capture_default_str();
    build_cmd->add_option("--quality-delay", b.quality_delay, "Failures before quality checks start (default M/3)");
    build_cmd->add_option("--stretch-k", b.stretch_k, "Stretch denominator multiple of dense delta")
        ->check(CLI::IsMember({2, 4}))
        ->capture_default_str();
    build_cmd->add_option("--stretch", b.stretch, "Stretch factor used without ExactStretch (default computed)")
        ->check(CLI::PositiveNumber);
    build_cmd->add_option("--out", b.out, "Output roadmap (.brm)")->required();

    QueryArgs q;
    auto* query_cmd = app.add_subcommand("query", "Plan a path on a roadmap");
    query_cmd->add_option("--graph", q.graph, "Roadmap (.brm)")->required();
    query_cmd->add_option("--env", q.env, "Environment JSON")->required();
    query_cmd->add_option("--start", q.start, "Start configuration x,y[,z]")->required();
    query_cmd->add_option("--goal", q.goal, "Goal configuration x,y[,z]")->required();
    query_cmd->add_option("--repair-env", q.repair_env, "Changed environment; edges are re-checked lazily");
    query_cmd->add_flag("--smooth", q.smooth, "Shortcut the returned path");
    query_cmd->add_option("--svg", q.svg, "Write an SVG of the roadmap and path");
    query_cmd->add_option("--slice", q.slice, "3D slice for --svg, e.g. z=25");

    BenchArgs be;
    auto* bench_cmd = app.add_subcommand("bench", "Baseline against Bolt on the map suite");
    bench_cmd->add_option("--dims", be.dims, "Comma list of dimensions")->capture_default_str();
    bench_cmd->add_option("--maps", be.maps, "Comma list of map ids")->capture_default_str();
    bench_cmd->add_option("--trials", be.trials, "Trials per map")->capture_default_str();
    bench_cmd->add_option("--scale", be.scale, "desk or paper")->capture_default_str();
    bench_cmd->add_option("--queries", be.queries, "Queries per graph (default from scale)");
    bench_cmd->add_option("--seed", be.seed, "Base seed")->capture_default_str();
    bench_cmd->add_flag("--keep-going", be.keep_going, "Continue after a record with failures");
    bench_cmd->add_option("--out", be.out, "Output directory")->capture_default_str();

    AblateArgs ab;
    auto* ablate_cmd = app.add_subcommand("ablate", "Bolt with and without one feature");
    ablate_cmd->add_option("--map", ab.map, "Map id")->capture_default_str();
    ablate_cmd->add_option("--dim", ab.dim, "Dimension")->capture_default_str();
    ablate_cmd->add_option("--flag", ab.flag, "Feature to remove")->required();
    ablate_cmd->add_option("--trials", ab.trials, "Trials")->capture_default_str();
    ablate_cmd->add_option("--scale", ab.scale, "desk or paper")->capture_default_str();
    ablate_cmd->add_option("--queries", ab.queries, "Queries per graph (default from scale)");
    ablate_cmd->add_option("--seed", ab.seed, "Base seed")->capture_default_str();
    ablate_cmd->add_option("--stretch-without-exact", ab.stretch_without_exact,
                           "Stretch used when ExactStretch is removed")
        ->capture_default_str();
    ablate_cmd->add_option("--out", ab.out, "Output directory")->capture_default_str();

    RenderArgs r;
    auto* render_cmd = app.add_subcommand("render", "Render a roadmap to SVG");
    render_cmd->add_option("--graph", r.graph, "Roadmap (.brm)")->required();
    render_cmd->add_option("--env", r.env, "Environment JSON")->required();
    render_cmd->add_option("--slice", r.slice, "3D slice, e.g. z=25");
    render_cmd->add_option("--compare", r.compare, "Second roadmap drawn side by side");
    render_cmd->add_option("--caption", r.caption, "Legend prefix");
    render_cmd->add_option("--out", r.out, "Output SVG")->required();

    ValidateArgs v;
    auto* validate_cmd = app.add_subcommand("validate", "Check roadmap invariants and path quality");
    validate_cmd->add_option("--graph", v.graph, "Roadmap (.brm)")->required();
    validate_cmd->add_option("--env", v.env, "Environment JSON")->required();
    validate_cmd->add_option("--queries", v.queries, "Random queries checked against the oracle")
        ->capture_default_str();
    validate_cmd->add_option("--seed", v.seed, "Query seed")->capture_default_str();

    std::string maps_out = "data/maps/v1", maps_dims = "2,3";
    auto* maps_cmd = app.add_subcommand("maps", "Write the benchmark map suite as JSON");
    maps_cmd->add_option("--out", maps_out, "Output directory")->capture_default_str();
    maps_cmd->add_option("--dims", maps_dims, "Comma list of dimensions")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*build_cmd) return run_build(b);
        if (*query_cmd) return run_query(q);
        if (*bench_cmd) return run_bench(be);
        if (*ablate_cmd) return run_ablate(ab);
        if (*render_cmd) return run_render(r);
        if (*validate_cmd) return run_validate(v);
        if (*maps_cmd) return run_maps(maps_out, maps_dims);
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadInput;
    }
    return kBadInput;
}
