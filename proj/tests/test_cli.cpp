#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include "casimir/cli.hpp"
#include "casimir/io.hpp"

using namespace casimir;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Captured {
    int code = 0;
    std::string out;
    std::string err;
};

Captured run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "casimir");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    Captured c;
    c.code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    c.out = out.str();
    c.err = err.str();
    return c;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("casimir_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("run writes a trajectory and a replayable manifest") {
    const fs::path dir = scratch("run");
    const Captured c = run_cli({"run", "-o", (dir / "a").string(), "--override", "t_final=2000", "n_dark=40"});
    REQUIRE(c.code == cli::kOk);
    const Json m = Json::parse(read_file(dir / "a" / "manifest.json"));
    CHECK(m["status"] == "ok");
    CHECK(m["version"] == cli::kToolVersion);
    CHECK(m["params"]["integrator"]["t_final"] == 2000.0);
    CHECK(m["params"]["dark_bath"]["n_dark"] == 40);
    CHECK(m["config_hash"].get<std::string>().size() == 40);

    // same parameters through a config file
    write_file_atomic(dir / "cfg.toml", "[integrator]\nt_final = 2000\n[dark_bath]\nn_dark = 40\n");
    REQUIRE(run_cli({"run", (dir / "cfg.toml").string(), "-o", (dir / "b").string()}).code == cli::kOk);
    CHECK(read_file(dir / "a" / "trajectory.csv") == read_file(dir / "b" / "trajectory.csv"));
    Json mb = Json::parse(read_file(dir / "b" / "manifest.json"));
    Json ma = m;
    ma.erase("wall_clock_seconds");
    mb.erase("wall_clock_seconds");
    CHECK(ma == mb);
    fs::remove_all(dir);
}

TEST_CASE("run without coupling leaves the field columns zero") {
    const fs::path dir = scratch("bare");
    REQUIRE(run_cli({"run", "-o", dir.string(), "--override", "lambda_c=0", "t_final=1500"}).code == cli::kOk);
    const Trajectory t = parse_trajectory_csv(read_file(dir / "trajectory.csv"));
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t.E_c[i] == 0.0);
        CHECK(t.E_B[i] == 0.0);
        CHECK(t.E_D[i] == 0.0);
    }
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"run", "--override", "lambda_c=-1"}).code == cli::kValidation);
    CHECK(run_cli({"run", "/no/such/config.toml"}).code == cli::kIo);
    CHECK(run_cli({"frobnicate"}).code == cli::kValidation);
    CHECK(run_cli({"sweep", "--param", "lambda_c"}).code == cli::kValidation);
    CHECK(run_cli({"sweep", "--param", "bogus", "--values", "1"}).code == cli::kValidation);
    CHECK(run_cli({"analyze", "/no/such/trajectory.csv", "--rabi"}).code == cli::kIo);

    const fs::path dir = scratch("bad");
    write_file_atomic(dir / "trajectory.csv", "t_au\n1\n");
    const Captured c = run_cli({"analyze", (dir / "trajectory.csv").string(), "--rabi"});
    CHECK(c.code == cli::kValidation);
    CHECK(c.err.find("row 1") != std::string::npos);
    fs::remove_all(dir);

    CHECK(run_cli({"--version"}).out == std::string(cli::kToolVersion) + "\n");
}

TEST_CASE("analyze: lifetime and missing beat") {
    const fs::path dir = scratch("analyze");
    REQUIRE(run_cli({"run", "-o", dir.string(), "--override", "lambda_c=0", "t_final=60000", "gamma_e=1e-4",
                     "n_dark=0"})
                .code == cli::kOk);
    const std::string csv = (dir / "trajectory.csv").string();
    REQUIRE(run_cli({"analyze", csv, "--fit-lifetime"}).code == cli::kOk);
    const Json a = Json::parse(read_file(dir / "analysis.json"));
    CHECK(a["lifetime"]["tau_au"].get<double>() == doctest::Approx(1e4).epsilon(0.01));
    CHECK(a["window_start_au"].get<double>() == 1000.0);

    const Captured c = run_cli({"analyze", csv, "--rabi"});
    CHECK(c.code == cli::kRuntime);
    CHECK(c.err.find("no polariton beating detected") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("sweep writes one row per value") {
    const fs::path dir = scratch("sweep");
    const Captured c = run_cli({"sweep", "--param", "E0", "--log-range", "1e-3", "4e-3", "3", "--fit-window", "0:3",
                                "-o", dir.string(), "--override", "t_final=2500", "n_dark=10", "-j", "2"});
    REQUIRE(c.code == cli::kOk);
    const std::string csv = read_file(dir / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const Json m = Json::parse(read_file(dir / "manifest.json"));
    CHECK(m["values"].size() == 3);
    CHECK(m["fit"].contains("exponent"));
    CHECK(run_cli({"sweep", "--param", "E0", "--values", "1e-3", "--fit-window", "0:5"}).code == cli::kValidation);
    fs::remove_all(dir);
}

TEST_CASE("predict") {
    Captured c = run_cli({"predict", "--pe", "1"});
    REQUIRE(c.code == cli::kOk);
    Json j = Json::parse(c.out);
    CHECK(j["photon_gain"]["au"].get<double>() == doctest::Approx(2e8));

    c = run_cli({"predict", "--pe", "0"});
    j = Json::parse(c.out);
    CHECK(j["photon_gain"]["au"] == 0.0);
    CHECK(j["vibrational_gain_total"]["au"] == 0.0);

    c = run_cli({"predict", "--pe", "0.01"});
    j = Json::parse(c.out);
    CHECK(j["vibrational_gain_per_oscillator"]["cm1"].get<double>() == doctest::Approx(0.2195).epsilon(0.01));
    CHECK(j["resonance_weight"]["value"] == 1.0);

    CHECK(run_cli({"predict", "--pe", "2"}).code == cli::kValidation);
}

TEST_CASE("convergence") {
    Captured c = run_cli({"convergence", "--override", "E0=0", "t_final=300"});
    REQUIRE(c.code == cli::kOk);
    Json j = Json::parse(c.out);
    CHECK(std::abs(j["value_dt"].get<double>()) < 1e-10);
    CHECK(j.contains("absolute_difference"));

    c = run_cli({"convergence", "--observable", "P_e", "--override", "t_final=1500", "n_dark=0"});
    REQUIRE(c.code == cli::kOk);
    j = Json::parse(c.out);
    CHECK(j["relative_difference"].get<double>() < 1e-6);

    // uncoupled, dissipation-free, pulse-driven: energy converges at fourth order
    c = run_cli({"convergence", "--order", "--observable", "E_total", "--override", "lambda_c=0", "gamma_e=0",
                 "gamma_c=0", "gamma_v_total=0", "n_dark=0", "t_final=2000", "dt=2"});
    REQUIRE(c.code == cli::kOk);
    j = Json::parse(c.out);
    CHECK(j["order"].get<double>() == doctest::Approx(4.0).epsilon(0.075));
}
