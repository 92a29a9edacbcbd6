#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "arclab/runner.hpp"

using namespace arclab;

namespace {

namespace fs = std::filesystem;

std::string write_temp_config(const std::string& name, const std::string& text) {
    const fs::path dir = fs::path("cli_test_tmp");
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

const char* kSimConfig = R"json({
  "domain": {
    "shape": {"type": "rectangle", "a": 1.0, "b": 1.0},
    "x0": [0.0, 0.0]
  },
  "grid": {"nx": 48, "ny": 48},
  "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 1, "xi": 1},
  "initial": {"kind": "gaussian", "center": [0.0, 0.0], "width": 0.45, "mass": 4.0},
  "time": {"dt0": 5e-4, "t_end": 0.05, "output_interval": 5e-3},
  "ctilde": {"mode": "estimate", "n_trials": 8, "seed": 5},
  "solver": {"backend": "dct"},
  "outputs": {"dir": "cli_test_tmp/out"}
})json";

} // namespace

TEST_CASE("cmd_geometry prints the unit-disk constants") {
    const std::string path = write_temp_config("geom.json", R"({
      "domain": {"shape": {"type": "disk", "radius": 1.0}, "x0": [0.0, 0.0]}
    })");
    std::ostringstream out, err;
    const int rc = run_command("geometry", path, {}, out, err);
    CHECK(rc == kExitOk);
    const std::string text = out.str();
    CHECK(text.find("rho0=1\n") != std::string::npos);
    CHECK(text.find("m1=1.5\n") != std::string::npos);
    CHECK(text.find("m2=2\n") != std::string::npos);
}

TEST_CASE("malformed config exits 2 and names the missing key") {
    const std::string path = write_temp_config("missing_x0.json", R"({
      "domain": {"shape": {"type": "disk", "radius": 1.0}}
    })");
    std::ostringstream out, err;
    const int rc = run_command("geometry", path, {}, out, err);
    CHECK(rc == kExitConfigError);
    CHECK(err.str().find("x0") != std::string::npos);
}

TEST_CASE("unknown command and unreadable config exit 2") {
    std::ostringstream out, err;
    CHECK(run_command("frobnicate", "nope.json", {}, out, err) == kExitConfigError);
    CHECK(run_command("geometry", "does_not_exist.json", {}, out, err) == kExitConfigError);
}

TEST_CASE("cmd_bound reports the all-ones unit-disk values and flags the regime") {
    const std::string path = write_temp_config("bound.json", R"({
      "domain": {"shape": {"type": "disk", "radius": 1.0}, "x0": [0.0, 0.0]},
      "grid": {"nx": 32, "ny": 32},
      "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 1, "xi": 1},
      "initial": {"kind": "constant", "value": 1.0},
      "ctilde": {"mode": "user", "value": 1.0},
      "outputs": {"dir": "cli_test_tmp/out_bound"}
    })");
    std::ostringstream out, err;
    const int rc = run_command("bound", path, {}, out, err);
    CHECK(rc == kExitOk);
    const std::string text = out.str();
    CHECK(text.find("A=0.925092636") != std::string::npos);
    CHECK(text.find("A_alt=0.960011489") != std::string::npos);
    CHECK(text.find("t_lower_explicit=1.21974721") != std::string::npos);
    CHECK(text.find("out_of_regime=true") != std::string::npos); // sigma = 0 here
    CHECK(text.find("ctilde_provenance=user") != std::string::npos);

    const std::string report = slurp("cli_test_tmp/out_bound/bound_report.txt");
    CHECK(report.rfind("# tool=arclab", 0) == 0);
    CHECK(report.find("config_hash=0x") != std::string::npos);
    const std::string csv = slurp("cli_test_tmp/out_bound/bound_report.csv");
    CHECK(csv.find("A_alt") != std::string::npos);
}

TEST_CASE("cmd_bound records estimator provenance and seed") {
    const std::string path = write_temp_config("bound_est.json", R"({
      "domain": {"shape": {"type": "rectangle", "a": 1.0, "b": 1.0}, "x0": [0.0, 0.0]},
      "grid": {"nx": 32, "ny": 32},
      "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 2, "xi": 1},
      "initial": {"kind": "constant", "value": 1.0},
      "ctilde": {"mode": "estimate", "n_trials": 4, "seed": 17},
      "outputs": {"dir": "cli_test_tmp/out_bound_est"}
    })");
    std::ostringstream out, err;
    const int rc = run_command("bound", path, {}, out, err);
    CHECK(rc == kExitOk);
    CHECK(out.str().find("estimated(n_trials=4;seed=17") != std::string::npos);
    CHECK(out.str().find("out_of_regime=false") != std::string::npos);
    CHECK(out.str().find("critical_mass=") != std::string::npos);
}

TEST_CASE("cmd_simulate produces byte-identical outputs for identical configs") {
    const std::string path = write_temp_config("sim.json", kSimConfig);
    std::ostringstream out1, out2, err;
    CliOverrides a, b;
    a.out_dir = "cli_test_tmp/sim_a";
    b.out_dir = "cli_test_tmp/sim_b";
    REQUIRE(run_command("simulate", path, a, out1, err) == kExitOk);
    REQUIRE(run_command("simulate", path, b, out2, err) == kExitOk);
    const std::string csv_a = slurp("cli_test_tmp/sim_a/trajectory.csv");
    const std::string csv_b = slurp("cli_test_tmp/sim_b/trajectory.csv");
    REQUIRE(!csv_a.empty());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("# tool=arclab", 0) == 0);
    CHECK(csv_a.find("# status=completed") != std::string::npos);
    CHECK(out1.str().find("status=completed") != std::string::npos);
}

TEST_CASE("cmd_simulate halves a CFL-violating dt0 and still succeeds") {
    std::string big_dt = kSimConfig;
    const size_t pos = big_dt.find("5e-4");
    big_dt.replace(pos, 4, "0.08"); // far beyond the advective bound
    const std::string path = write_temp_config("sim_cfl.json", big_dt);
    std::ostringstream out, err;
    CliOverrides o;
    o.out_dir = "cli_test_tmp/sim_cfl";
    const int rc = run_command("simulate", path, o, out, err);
    CHECK(rc == kExitOk);
    const std::string text = out.str();
    const size_t halvings_pos = text.find("cfl_halvings=");
    REQUIRE(halvings_pos != std::string::npos);
    CHECK(text.substr(halvings_pos, 14) != "cfl_halvings=0");
}

TEST_CASE("cmd_verify passes on a smooth subcritical run") {
    const std::string path = write_temp_config("verify.json", kSimConfig);
    std::ostringstream out, err;
    CliOverrides o;
    o.out_dir = "cli_test_tmp/verify_out";
    const int rc = run_command("verify", path, o, out, err);
    CHECK(rc == kExitOk);
    const std::string text = out.str();
    CHECK(text.find("check_mass=ok") != std::string::npos);
    CHECK(text.find("check_odi=ok") != std::string::npos);
    CHECK(text.find("check_bound_order=ok") != std::string::npos);
    CHECK(text.find("verify=ok") != std::string::npos);
}

TEST_CASE("cmd_bench runs a small trial set cleanly") {
    const std::string path = write_temp_config("bench.json", R"({
      "domain": {"shape": {"type": "rectangle", "a": 1.0, "b": 1.0}, "x0": [0.0, 0.0]},
      "grid": {"nx": 64, "ny": 64},
      "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 1, "xi": 1},
      "bench": {"n_trials": 9, "seed": 21},
      "outputs": {"dir": "cli_test_tmp/bench_out"}
    })");
    std::ostringstream out, err;
    const int rc = run_command("bench", path, {}, out, err);
    CHECK(rc == kExitOk);
    CHECK(out.str().find("confirmed_violations=0") != std::string::npos);
    CHECK(out.str().find("heldout_violations=0/9") != std::string::npos);
    const std::string csv = slurp("cli_test_tmp/bench_out/bench.csv");
    CHECK(csv.find("trial,family,") != std::string::npos);
}

TEST_CASE("cmd_estimate_ctilde prints the estimate with provenance fields") {
    const std::string path = write_temp_config("est.json", R"({
      "domain": {"shape": {"type": "rectangle", "a": 0.5, "b": 0.5}, "x0": [0.0, 0.0]},
      "grid": {"nx": 32, "ny": 32},
      "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 1, "xi": 1},
      "ctilde": {"mode": "estimate", "n_trials": 3, "seed": 9}
    })");
    std::ostringstream out, err;
    const int rc = run_command("estimate-ctilde", path, {}, out, err);
    CHECK(rc == kExitOk);
    CHECK(out.str().find("value=") != std::string::npos);
    CHECK(out.str().find("seed=9") != std::string::npos);
    CHECK(out.str().find("n_trials=3") != std::string::npos);
}

TEST_CASE("seed override changes the estimator stream") {
    const std::string path = write_temp_config("seed_ovr.json", R"({
      "domain": {"shape": {"type": "rectangle", "a": 0.5, "b": 0.5}, "x0": [0.0, 0.0]},
      "grid": {"nx": 32, "ny": 32},
      "params": {"alpha": 1, "beta": 1, "gamma": 1, "delta": 1, "chi": 1, "xi": 1},
      "ctilde": {"mode": "estimate", "n_trials": 5, "seed": 9}
    })");
    std::ostringstream out1, out2, err;
    CliOverrides o;
    o.seed = 4711;
    REQUIRE(run_command("estimate-ctilde", path, o, out1, err) == kExitOk);
    CHECK(out1.str().find("seed=4711") != std::string::npos);
    REQUIRE(run_command("estimate-ctilde", path, {}, out2, err) == kExitOk);
    CHECK(out2.str().find("seed=9") != std::string::npos);
}
