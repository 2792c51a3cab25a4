#include "boltspan/bench.hpp"
#include "boltspan/validate.hpp"
#include "boltspan/maps.hpp"
#include "doctest.h"

using namespace boltspan;

TEST_CASE("mean and standard deviation") {
    const Stat one = mean_sd({4.0});
    CHECK(one.mean == 4.0);
    CHECK(one.sd == 0.0);
    const Stat two = mean_sd({3.0, 7.0});
    CHECK(two.mean == 5.0);
    CHECK(two.sd == doctest::Approx(std::sqrt(8.0)));
    CHECK(mean_sd({1, 2, 3, 4}).sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
}

TEST_CASE("summaries group by dimension, map and mode") {
    std::vector<BenchRecord> records;
    for (int map : {1, 2})
        for (const char* mode : {"baseline", "bolt"})
            for (int t = 0; t < 10; ++t) {
                BenchRecord r;
                r.map = map;
                r.mode = mode;
                r.seed = static_cast<std::uint64_t>(t);
                r.edges = 100 + static_cast<std::size_t>(t);
                records.push_back(r);
            }
    const auto rows = summarize(records);
    CHECK(rows.size() == 4);
    CHECK(rows[0].trials == 10);
    CHECK(rows[0].edges.mean == doctest::Approx(104.5));
    CHECK_THROWS_AS((void)summarize({}), InputError);
    const std::string csv = records_csv(records);
    CHECK(csv.starts_with("map,dim,seed,mode,vertices,edges,samples,build_ms,q_mean_ms,q_mean_expanded,"
                          "quality_ratio_mean,quality_ratio_max,failures\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
    CHECK(summary_table(rows).find("bolt") != std::string::npos);
    const std::string summary = summary_csv(rows);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);
}

TEST_CASE("seeds and scales") {
    CHECK(trial_seed(1, 3, 2, 0) != trial_seed(1, 3, 2, 1));
    CHECK(trial_seed(1, 3, 2, 0) != trial_seed(1, 4, 2, 0));
    CHECK(trial_seed(1, 3, 2, 0) == trial_seed(1, 3, 2, 0));
    CHECK(scale_settings(Scale::Desk).termination_failures == 3000);
    CHECK(scale_settings(Scale::Desk).quality_delay_failures == 1000);
    CHECK(scale_settings(Scale::Desk).queries == 100);
    CHECK(scale_settings(Scale::Paper).termination_failures == 15000);
    CHECK(scale_settings(Scale::Paper).quality_delay_failures == 5000);
    CHECK(scale_settings(Scale::Paper).queries == 1000);
    CHECK(parse_scale("paper") == Scale::Paper);
    CHECK_THROWS_AS((void)parse_scale("huge"), InputError);
    const BuildParams p = bench_params(2, Scale::Desk, FeatureSet::none());
    CHECK(p.stretch == doctest::Approx(compute_stretch(2, 6.92, 0.693, 4)));
}

TEST_CASE("small suite runs both modes on matched seeds") {
    SuiteConfig c;
    c.maps = {1, 2};
    c.trials = 2;
    c.queries = 10;
    const auto records = run_suite(c);
    REQUIRE(records.size() == 8);
    for (std::size_t i = 0; i < records.size(); i += 2) {
        CHECK(records[i].mode == "baseline");
        CHECK(records[i + 1].mode == "bolt");
        CHECK(records[i].seed == records[i + 1].seed);
        CHECK(records[i].failures == 0);
        CHECK(records[i + 1].failures == 0);
        CHECK(records[i].quality_ratio_mean >= 1.0 - 1e-9);
    }
    CHECK(summarize(records).size() == 4);
}

TEST_CASE("ablation pairs") {
    AblationConfig c;
    c.map = 2;
    c.feature = Feature::DirectConnectivity;
    c.trials = 1;
    c.queries = 5;
    const auto records = run_ablation(c);
    REQUIRE(records.size() == 2);
    CHECK(records[0].mode == "bolt");
    CHECK(records[1].mode == "bolt-no-DirectConnectivity");
}

TEST_CASE("validation of a built roadmap") {
    const auto env = generate_map(3, 2);
    const BuildParams p = bench_params(2, Scale::Desk, FeatureSet::all());
    SampleStream s(12);
    const auto r = build(env, p, s);
    Roadmap map{RoadmapHeader{2, p.metric, p.delta, p.dense_delta, r.stretch}, r.graph};
    const auto report = validate_roadmap(map, env, 30, 4);
    CHECK(report.violations() == 0);
    CHECK(report.queries == 30);
    CHECK(report.max_ratio <= r.stretch + 1.0);

    // A collision-crossing edge is reported.
    const Environment wall({{0, 10}, {0, 10}}, {Box{{4, 0}, {6, 8}}}, 1.0);
    SparseGraph g(2, Metric::L1, 6.93);
    g.add_vertex({1, 1}, VertexKind::Loaded);
    g.add_vertex({9, 1}, VertexKind::Loaded);
    g.add_edge(0, 1, EdgeKind::Loaded);
    const auto bad = validate_roadmap(Roadmap{map.header, g}, wall, 0, 1);
    CHECK(bad.invalid_edges == 1);
    CHECK(bad.violations() == 1);
    CHECK_THROWS_AS((void)validate_roadmap(Roadmap{map.header, g}, Environment::empty(3, 0, 10), 0, 1), InputError);
}
