#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nncross/experiment.hpp"

using namespace nncross;

namespace {

std::filesystem::path temp_dir(const char* tag) {
    const auto dir = std::filesystem::temp_directory_path() / (std::string("nncross_") + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

GlobalField lcg_field(const Grid& g, uint64_t seed) {
    GlobalField f(g);
    uint64_t s = seed;
    for (double& v : f.values()) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        v = 2.0 * (static_cast<double>(s >> 11) / 9007199254740992.0) - 1.0;
    }
    return f;
}

}  // namespace

TEST_CASE("example 1 is the constant source with zero boundary data") {
    const Grid g = build_grid(10);
    auto [f, gb] = build_example1(g);
    for (double v : f.values()) CHECK(v == 1.0);
    for (double v : gb.values()) CHECK(v == 0.0);
    CHECK(symmetry_defect(f, SymmetryKind::Even) == 0.0);
}

TEST_CASE("example 2 values match the quadrant formula") {
    const Grid g = build_grid(10);
    auto [f, gb] = build_example2(g);
    for (double v : gb.values()) CHECK(v == 0.0);

    // phi = -3pi/4 at (-0.5,-0.5): sin(2 phi) = 1, so f = -1 + 1 = 0
    CHECK(f.at(Node{-5, -5}) == doctest::Approx(0.0).epsilon(1e-15));
    // mirrored point in the upper-right quadrant: f = 1 - 1 = 0
    CHECK(f.at(Node{5, 5}) == doctest::Approx(0.0).epsilon(1e-15));
    // h vanishes on the axes and in the other two quadrants
    CHECK(f.at(Node{0, 4}) == g.y(Node{0, 4}));
    CHECK(f.at(Node{-3, 0}) == g.x(Node{-3, 0}));
    CHECK(f.at(Node{5, -5}) == g.x(Node{5, -5}) + g.y(Node{5, -5}));
    // spot value inside the lower-left quadrant
    const Node p{-4, -2};
    const double phi = std::atan2(g.y(p), g.x(p));
    CHECK(f.at(p) == doctest::Approx(g.x(p) + g.y(p) + std::sin(2 * phi)).epsilon(1e-15));

    CHECK(symmetry_defect(f, SymmetryKind::Odd) == 0.0);
}

TEST_CASE("field CSV round trip is lossless") {
    const Grid g = build_grid(7);
    const auto dir = temp_dir("csv");
    const GlobalField f = lcg_field(g, 11);

    write_field_csv(dir / "f.csv", g, f);
    const GlobalField back = read_field_csv(dir / "f.csv", g);
    for (int idx = 0; idx < g.node_count(); ++idx)
        CHECK(back.values()[static_cast<size_t>(idx)] == f.values()[static_cast<size_t>(idx)]);

    // 0.1 survives the 17-digit round trip bit-exactly
    GlobalField tenth(g);
    for (double& v : tenth.values()) v = 0.1;
    write_field_csv(dir / "tenth.csv", g, tenth);
    const GlobalField tenth_back = read_field_csv(dir / "tenth.csv", g);
    for (double v : tenth_back.values()) CHECK(v == 0.1);
}

TEST_CASE("field CSV reader reports problems with line numbers") {
    const Grid g = build_grid(4);
    const auto dir = temp_dir("csvbad");

    {
        std::ofstream out(dir / "short.csv");
        out << "x,y,value\n0,0,1\n";
    }
    CHECK_THROWS_WITH_AS(read_field_csv(dir / "short.csv", g),
                         doctest::Contains("does not match the lattice"), std::runtime_error);

    {
        write_field_csv(dir / "trunc.csv", g, GlobalField(g));
        // drop the last row
        std::string body = slurp(dir / "trunc.csv");
        body.erase(body.rfind('\n', body.size() - 2) + 1);
        std::ofstream out(dir / "trunc.csv", std::ios::binary);
        out << body;
    }
    CHECK_THROWS_WITH_AS(read_field_csv(dir / "trunc.csv", g), doctest::Contains("expected"),
                         std::runtime_error);

    {
        std::ofstream out(dir / "garbled.csv");
        out << "x,y,value\nnot_a_number\n";
    }
    CHECK_THROWS_WITH_AS(read_field_csv(dir / "garbled.csv", g), doctest::Contains("line 2"),
                         std::runtime_error);

    CHECK_THROWS_AS(read_field_csv(dir / "missing.csv", g), std::runtime_error);
}

TEST_CASE("run_experiment rejects invalid configurations") {
    RunConfig bad;
    bad.n = 1;
    CHECK(run_experiment(bad) == kExitUsage);

    RunConfig custom;
    custom.example = 0;
    CHECK(run_experiment(custom) == kExitUsage);

    RunConfig tol;
    tol.tol = 0.0;
    CHECK(run_experiment(tol) == kExitUsage);

    RunConfig iters;
    iters.max_iter = 0;
    CHECK(run_experiment(iters) == kExitUsage);
}

TEST_CASE("run_experiment writes a parsable history and converges on example 1") {
    RunConfig config;
    config.method = MethodKind::New;
    config.example = 1;
    config.theta = 0.25;
    config.n = 12;
    config.max_iter = 10;
    config.output_dir = temp_dir("ex1");
    CHECK(run_experiment(config) == kExitConverged);

    std::ifstream in(config.output_dir / "history.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "iter,l2_error,broken_h1_error,subdomain_sum_l2,ratio,psi_crosspoint_max,status");
    double l2_0 = -1.0, l2_2 = -1.0;
    double l2_prev = -1.0;
    std::string line;
    std::string last_status;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        const int k = std::stoi(field);
        std::getline(row, field, ',');
        const double l2 = std::stod(field);
        if (k == 0) l2_0 = l2;
        if (k == 2) l2_2 = l2;
        for (int skip = 0; skip < 2; ++skip) std::getline(row, field, ',');
        std::getline(row, field, ',');  // ratio column
        if (k >= 2 && l2_prev > 0.0) {
            REQUIRE(!field.empty());
            CHECK(std::stod(field) == doctest::Approx(l2 / l2_prev).epsilon(1e-14));
        } else {
            CHECK(field.empty());
        }
        l2_prev = l2;
        std::getline(row, field, ',');  // psi column
        std::getline(row, last_status, ',');
    }
    REQUIRE(l2_0 > 0.0);
    REQUIRE(l2_2 >= 0.0);
    CHECK(l2_2 <= 1e-9 * l2_0);
    CHECK(last_status == "converged");
}

TEST_CASE("run_experiment reports the negative result on example 2") {
    RunConfig config;
    config.method = MethodKind::Standard;
    config.example = 2;
    config.theta = 0.25;
    config.n = 10;
    config.max_iter = 12;
    config.output_dir = temp_dir("neg");
    const int code = run_experiment(config);
    CHECK((code == kExitDiverged || code == kExitMaxIterations));
}

TEST_CASE("identical configurations produce byte-identical histories") {
    RunConfig config;
    config.method = MethodKind::New;
    config.example = 2;
    config.theta = 0.23;
    config.n = 10;
    config.max_iter = 6;
    config.tol = 1e-12;

    config.output_dir = temp_dir("det_a");
    REQUIRE(run_experiment(config) >= 0);
    const std::string first = slurp(config.output_dir / "history.csv");

    config.output_dir = temp_dir("det_b");
    REQUIRE(run_experiment(config) >= 0);
    const std::string second = slurp(config.output_dir / "history.csv");

    CHECK(first == second);
    CHECK(!first.empty());
}

TEST_CASE("custom data runs through the CSV path") {
    const Grid g = build_grid(8);
    const auto dir = temp_dir("custom");
    auto [f, gb] = build_example1(g);
    write_field_csv(dir / "f.csv", g, f);

    RunConfig config;
    config.method = MethodKind::New;
    config.example = 0;
    config.theta = 0.25;
    config.n = 8;
    config.max_iter = 8;
    config.f_file = dir / "f.csv";
    config.output_dir = dir / "out";
    CHECK(run_experiment(config) == kExitConverged);
}
