#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the command line tool with stderr discarded.
Run cli(const std::string& args) {
    const std::string cmd = std::string(BOLTSPAN_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string map_file(int id, int d) {
    return std::string(BOLTSPAN_SOURCE_DIR) + "/data/maps/v1/map" + std::to_string(id) + "_" + std::to_string(d) +
           "d.json";
}

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / "boltspan_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("build on the empty square reports the lattice") {
    const auto out = scratch() / "empty.brm";
    const Run r = cli("build --env " + map_file(1, 2) + " --delta 6.93 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("beta=6.92\n") != std::string::npos);
    CHECK(r.out.find("vertices=64\n") != std::string::npos);
    CHECK(r.out.find("sampled_vertices=0\n") != std::string::npos);
    CHECK(std::filesystem::exists(out));

    const Run again = cli("build --env " + map_file(1, 2) + " --delta 6.93 --out " + (scratch() / "again.brm").string());
    std::ifstream a(out), b(scratch() / "again.brm");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("query exit codes") {
    const auto graph = (scratch() / "m2.brm").string();
    REQUIRE(cli("build --env " + map_file(2, 2) + " --delta 6.93 --seed 3 --out " + graph).code == 0);
    const std::string base = "query --graph " + graph + " --env " + map_file(2, 2);
    const Run same = cli(base + " --start 1,1 --goal 1,1");
    CHECK(same.code == 0);
    CHECK(same.out.find("length=0.000000") != std::string::npos);
    const Run across = cli(base + " --start 1,1 --goal 48,48 --smooth --svg " + (scratch() / "q.svg").string());
    CHECK(across.code == 0);
    CHECK(across.out.find("smoothed_length=") != std::string::npos);
    CHECK(std::filesystem::exists(scratch() / "q.svg"));
    CHECK(cli(base + " --start 1,x --goal 2,2").code == 2);
    CHECK(cli(base + " --start 1,1,1 --goal 2,2").code == 2);

    // A wall across the whole map in the changed environment: no path.
    const auto closed = scratch() / "closed.json";
    std::ofstream(closed) << R"({"dimension": 2, "bounds": [[0, 50], [0, 50]], "clearance": 1,
        "obstacles": [{"min": [24, 0], "max": [26, 50]}]})";
    CHECK(cli(base + " --start 1,1 --goal 48,48 --repair-env " + closed.string()).code == 1);
}

TEST_CASE("argument errors exit with 2") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("build --env " + map_file(1, 2) + " --delta 6.93 --out x.brm --bogus").code == 2);
    CHECK(cli("build --env /nonexistent.json --delta 6.93 --out x.brm").code == 2);
    CHECK(cli("build --env " + map_file(1, 2) + " --delta -1 --out x.brm").code == 2);
    CHECK(cli("build --env " + map_file(1, 2) + " --delta 6.93 --flags Turbo --out x.brm").code == 2);
    CHECK(cli("build --env " + map_file(1, 2) + " --delta 6.93 --stretch-k 3 --out x.brm").code == 2);
    CHECK(cli("bench --scale huge").code == 2);
    CHECK(cli("ablate --flag Nothing").code == 2);
    CHECK(cli("--help").code == 0);
    const Run help = cli("build --help");
    for (const char* flag : {"--env", "--delta", "--dense-delta", "--psi", "--metric", "--flags", "--seed",
                             "--term-failures", "--quality-delay", "--stretch-k", "--out"})
        CHECK(help.out.find(flag) != std::string::npos);
}

TEST_CASE("validate and render") {
    const auto graph = (scratch() / "m3.brm").string();
    REQUIRE(cli("build --env " + map_file(3, 2) + " --delta 6.93 --seed 5 --out " + graph).code == 0);
    const Run v = cli("validate --graph " + graph + " --env " + map_file(3, 2) + " --queries 25");
    CHECK(v.code == 0);
    CHECK(v.out.find("violations=0") != std::string::npos);
    const auto svg = scratch() / "m3.svg";
    CHECK(cli("render --graph " + graph + " --env " + map_file(3, 2) + " --out " + svg.string()).code == 0);
    CHECK(std::filesystem::file_size(svg) > 0);
    CHECK(cli("render --graph " + graph + " --env " + map_file(3, 3) + " --slice z=10 --out " + svg.string()).code ==
          2);
    const auto g3 = (scratch() / "m2_3d.brm").string();
    REQUIRE(cli("build --env " + map_file(2, 3) + " --delta 8.49 --term-failures 300 --out " + g3).code == 0);
    CHECK(cli("render --graph " + g3 + " --env " + map_file(2, 3) + " --out " + svg.string()).code == 2);
    CHECK(cli("render --graph " + g3 + " --env " + map_file(2, 3) + " --slice z=10 --out " + svg.string()).code == 0);
}

TEST_CASE("maps subcommand reproduces the shipped files") {
    const auto dir = scratch() / "maps";
    REQUIRE(cli("maps --out " + dir.string()).code == 0);
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ifstream a(entry.path()), b(std::string(BOLTSPAN_SOURCE_DIR) + "/data/maps/v1/" +
                                         entry.path().filename().string());
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
    }
}
