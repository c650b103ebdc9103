#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef STRATRES_CLI
#error "STRATRES_CLI must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(STRATRES_CLI) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "stratres_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("solve json report carries the maximal-domain numbers") {
    const RunResult res = run_cli("solve --method parametric --format json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["command"] == "solve");
    CHECK(std::abs(j["results"]["r_max"].get<double>() - 1.230) < 0.005);
    CHECK(std::abs(j["results"]["u_end"].get<double>() - 0.228) < 0.005);
    CHECK(std::abs(j["results"]["slope_end"].get<double>() - 0.57735) < 1e-5);
}

TEST_CASE("resistance cone row") {
    const RunResult res = run_cli("resistance --cone 1 1");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.out.rfind("lambda,E,err\n", 0) == 0);
    std::stringstream ss(res.out.substr(res.out.find('\n') + 1));
    std::string lam, e, err;
    std::getline(ss, lam, ',');
    std::getline(ss, e, ',');
    std::getline(ss, err);
    CHECK(lam == "1");
    CHECK(std::abs(std::stod(e) - M_PI / std::exp(1.0)) < 1e-12);
    CHECK(std::stod(err) >= 0.0);
}

TEST_CASE("validation failures exit 2 and write nothing") {
    const auto out_path = scratch_dir() / "should_not_exist.csv";
    std::filesystem::remove(out_path);
    const RunResult res = run_cli("solve --eps0 -1 -o " + out_path.string());
    CHECK(res.exit_code == 2);
    CHECK(!std::filesystem::exists(out_path));
}

TEST_CASE("numerical failures exit 3") {
    const RunResult res = run_cli("picard --max-iter 1 --conv-tol 1e-14");
    CHECK(res.exit_code == 3);
}

TEST_CASE("sweep classifies the figure starts and is deterministic") {
    const std::string args = "sweep --start 1,1.4707963267948966 --start 1,1.0707963267948966 "
                             "--start 1,0.7707963267948966";
    const RunResult a = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out.rfind("index,x0,theta0,class,event,", 0) == 0);
    int rows = 0;
    std::stringstream ss(a.out);
    std::string line;
    std::getline(ss, line); // header
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);

    const RunResult b = run_cli(args);
    CHECK(a.out == b.out); // byte-identical reruns

    // duplicate starts produce identical rows
    const RunResult dup = run_cli("sweep --start 1,0.5 --start 1,0.5");
    std::stringstream ds(dup.out);
    std::string header, r1, r2;
    std::getline(ds, header);
    std::getline(ds, r1);
    std::getline(ds, r2);
    CHECK(r1.substr(1) == r2.substr(1)); // identical except the index column
}

TEST_CASE("sweep with no starts exits 2") {
    const RunResult res = run_cli("sweep");
    CHECK(res.exit_code == 2);
}

TEST_CASE("sweep accepts slope-coordinate starts") {
    const RunResult res = run_cli("sweep --start-slope 1,0.3 --format json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    REQUIRE(j["results"]["rows"].size() == 1);
    CHECK(std::abs(j["results"]["rows"][0]["theta0"].get<double>() - std::atan(0.3)) < 1e-15);
}

TEST_CASE("sweep records per-row failures without failing the run") {
    // first start sits exactly on P1; the row carries the error, the command
    // still succeeds and classifies the remaining rows
    const RunResult res =
        run_cli("sweep --start 0.5773502691896257,0.5235987755982988 --start 1,1.0707963267948966");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("StartIsEquilibrium") != std::string::npos);
    CHECK(res.out.find("vertical-asymptote") != std::string::npos);
}

TEST_CASE("output files are written atomically and reruns are byte-identical") {
    const auto dir = scratch_dir();
    const auto p1 = dir / "a.csv";
    const auto p2 = dir / "b.csv";
    REQUIRE(run_cli("solve -o " + p1.string()).exit_code == 0);
    REQUIRE(run_cli("solve -o " + p2.string()).exit_code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!std::filesystem::exists(p1.string() + ".tmp"));
    CHECK(slurp(p1).rfind("r,u,du\n", 0) == 0);
}

TEST_CASE("config file supplies defaults and flags override it") {
    const auto dir = scratch_dir();
    const auto cfg_path = dir / "config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"eps0": 2e-3, "method": "parametric"})";
    }
    const RunResult from_cfg =
        run_cli("--config " + cfg_path.string() + " solve --format json");
    REQUIRE(from_cfg.exit_code == 0);
    CHECK(json::parse(from_cfg.out)["inputs"]["eps0"].get<double>() == 2e-3);

    const RunResult overridden =
        run_cli("--config " + cfg_path.string() + " solve --eps0 1e-3 --format json");
    REQUIRE(overridden.exit_code == 0);
    CHECK(json::parse(overridden.out)["inputs"]["eps0"].get<double>() == 1e-3);
}

TEST_CASE("offset solve reports both stop reasons") {
    const RunResult res = run_cli("solve --r0 1 --p0 0.3 --format json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["inputs"]["r0"].get<double>() == 1.0);
    CHECK(!j["diagnostics"]["stop_forward"].get<std::string>().empty());
    CHECK(!j["diagnostics"]["stop_backward"].get<std::string>().empty());
}

TEST_CASE("picard subcommand reports the contraction diagnostics") {
    const RunResult res = run_cli("picard --format json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["results"]["observed_ratio"].get<double>() <= 0.55);
    CHECK(j["results"]["iterations"].get<int>() >= 2);
    CHECK(j["results"]["radius_bound"]["R"].get<double>() < 1.0);
}

TEST_CASE("phase subcommand emits the orbit csv") {
    const RunResult res = run_cli("phase --x0 0.62 --theta0 0.5235987755982988 --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.rfind("tau,x,theta,y\n", 0) == 0);
}

TEST_CASE("resistance profile file route") {
    const auto dir = scratch_dir();
    const auto prof_path = dir / "profile.csv";
    REQUIRE(run_cli("solve -o " + prof_path.string()).exit_code == 0);
    const RunResult res =
        run_cli("resistance --profile " + prof_path.string() + " --format json");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["results"]["E"].get<double>() > 0.0);
}
