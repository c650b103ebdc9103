#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "stratres/errors.hpp"
#include "stratres/serialize.hpp"
#include "stratres/solver.hpp"

using namespace stratres;

TEST_CASE("format_double round-trips doubles exactly") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto roundtrip = [](double v) { return std::stod(format_double(v)); };
    for (double v : {0.0, 1.0 / 3.0, 0.1, M_PI, 1e-300, 1e300, -2.5e-17})
        CHECK(roundtrip(v) == v);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(unit(rng), static_cast<int>(rng() % 600) - 300);
        CHECK(roundtrip(v) == v);
    }
}

TEST_CASE("profile csv round trip is bit exact") {
    const RadialProfile prof = solve_from_axis();
    const std::string csv = profile_to_csv(prof);
    const RadialProfile back = profile_from_csv(csv);
    REQUIRE(back.samples.size() == prof.samples.size());
    for (std::size_t i = 0; i < prof.samples.size(); ++i) {
        CHECK(back.samples[i].r == prof.samples[i].r);
        CHECK(back.samples[i].u == prof.samples[i].u);
        CHECK(back.samples[i].p == prof.samples[i].p);
    }
}

TEST_CASE("serialization is deterministic") {
    const RadialProfile a = solve_from_axis();
    const RadialProfile b = solve_from_axis();
    CHECK(profile_to_csv(a) == profile_to_csv(b));
}

TEST_CASE("csv headers") {
    const RadialProfile prof = solve_from_axis();
    CHECK(profile_to_csv(prof).rfind("r,u,du\n", 0) == 0);

    std::vector<ConeDemoRow> rows{{1.0, 2.0, 3.0}};
    CHECK(demo_table_to_csv(rows) == "lambda,E,err\n1,2,3\n");
}

TEST_CASE("profile csv rejects malformed input") {
    CHECK_THROWS_AS(profile_from_csv("x,y,z\n1,2,3\n"), Error);
    CHECK_THROWS_AS(profile_from_csv("r,u,du\n1,2\n"), Error);
    CHECK_THROWS_AS(profile_from_csv("r,u,du\n1,2,zzz\n"), Error);
    // non-increasing radii fail validation
    CHECK_THROWS_AS(profile_from_csv("r,u,du\n1,0,0\n0.5,0,0\n"), Error);
}

TEST_CASE("atomic write leaves no temp file behind") {
    const auto dir = std::filesystem::temp_directory_path() / "stratres_serialize_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    write_atomic(path, "r,u,du\n0,0,0\n1,1,1\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "r,u,du\n0,0,0\n1,1,1\n");
    CHECK(!std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
}
