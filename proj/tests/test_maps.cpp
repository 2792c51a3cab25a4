#include <fstream>
#include <limits>
#include <sstream>

#include "boltspan/maps.hpp"
#include "doctest.h"

using namespace boltspan;

TEST_CASE("map suite grading") {
    const int counts[] = {0, 4, 8, 14, 22};
    const double gaps[] = {0, 8, 6, 4, 3};
    for (int id = 1; id <= kMapCount; ++id) {
        CAPTURE(id);
        const auto env = generate_map(id, 2);
        CHECK(env.dimension() == 2);
        CHECK(env.clearance() == kMapClearance);
        CHECK(env.obstacles().size() == static_cast<std::size_t>(counts[id - 1]));
        CHECK(free_space_connected(env));
        if (id == 1) {
            CHECK(minimum_gap(env) == std::numeric_limits<double>::infinity());
            continue;
        }
        CHECK(minimum_gap(env) >= gaps[id - 1]);
        CHECK(minimum_gap(env) < gaps[id - 1] + 1.5);
        CHECK(narrow_passage_count(env) >= map_spec(id).min_narrow);
        CHECK(narrow_passage_count(env) < map_spec(id).max_narrow);
    }
    for (int id = 2; id <= kMapCount; ++id)
        CHECK(narrow_passage_count(generate_map(id, 2)) > narrow_passage_count(generate_map(id - 1, 2)));
}

TEST_CASE("3D maps extrude the 2D layout") {
    for (int id = 1; id <= kMapCount; ++id) {
        const auto flat = generate_map(id, 2);
        const auto tall = generate_map(id, 3);
        REQUIRE(tall.obstacles().size() == flat.obstacles().size());
        for (std::size_t k = 0; k < flat.obstacles().size(); ++k) {
            const Box& a = flat.obstacles()[k];
            const Box& b = tall.obstacles()[k];
            CHECK(b.min[0] == a.min[0]);
            CHECK(b.max[1] == a.max[1]);
            CHECK(b.min[2] == 0.0);
            CHECK(b.max[2] == kMapExtent);
        }
    }
}

TEST_CASE("generator is deterministic and rejects bad ids") {
    CHECK(generate_map(4, 2) == generate_map(4, 2));
    CHECK_THROWS_AS((void)generate_map(0, 2), InputError);
    CHECK_THROWS_AS((void)generate_map(6, 2), InputError);
    CHECK_THROWS_AS((void)generate_map(1, 4), InputError);
    CHECK(map_file_name(3, 2) == "map3_2d.json");
}

TEST_CASE("shipped map files match the generator") {
    for (int d : {2, 3}) {
        for (int id = 1; id <= kMapCount; ++id) {
            const std::string path = std::string(BOLTSPAN_SOURCE_DIR) + "/data/maps/v1/" + map_file_name(id, d);
            CAPTURE(path);
            std::ifstream in(path);
            REQUIRE(in);
            std::stringstream text;
            text << in.rdbuf();
            CHECK(text.str() == environment_to_json(generate_map(id, d)));
            CHECK(load_environment(path) == generate_map(id, d));
        }
    }
}
