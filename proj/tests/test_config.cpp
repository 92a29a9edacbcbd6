#include <doctest.h>

#include <string>

#include "arclab/config.hpp"
#include "arclab/errors.hpp"

using namespace arclab;

namespace {

const char* kFullConfig = R"json({
  "domain": {
    "shape": {"type": "rectangle", "a": 1.0, "b": 1.0},
    "x0": [0.0, 0.0],
    "boundary_resolution": 128
  },
  "grid": {"nx": 64, "ny": 48},
  "params": {"alpha": 1, "beta": 2, "gamma": 0.5, "delta": 1.5, "chi": 2, "xi": 0.25},
  "initial": {"kind": "gaussian", "center": [0.1, -0.2], "width": 0.3, "mass": 5.0},
  "time": {"dt0": 1e-3, "t_end": 0.5, "output_interval": 0.01, "cfl": 0.3},
  "ctilde": {"mode": "estimate", "n_trials": 32, "seed": 11, "safety_factor": 2.5},
  "bench": {"n_trials": 12, "seed": 3},
  "outputs": {"dir": "outdir", "trajectory": "traj.csv"},
  "solver": {"backend": "cg", "rtol": 1e-9}
})json";

} // namespace

TEST_CASE("full config parses with every block") {
    const ExperimentConfig c = parse_config(kFullConfig, "inline");
    REQUIRE(c.domain.has_value());
    REQUIRE(c.grid.has_value());
    REQUIRE(c.params.has_value());
    REQUIRE(c.initial.has_value());
    REQUIRE(c.time.has_value());
    REQUIRE(c.ctilde.has_value());
    REQUIRE(c.bench.has_value());

    CHECK(std::holds_alternative<RectangleSpec>(c.domain->shape));
    CHECK(c.grid->nx == 64);
    CHECK(c.grid->ny == 48);
    CHECK(c.params->chi == 2.0);
    CHECK(std::holds_alternative<GaussianIC>(*c.initial));
    CHECK(c.time->cfl == 0.3);
    CHECK(c.ctilde->mode == CtildeMode::estimate);
    CHECK(c.ctilde->safety_factor == 2.5);
    CHECK(c.bench->n_trials == 12);
    CHECK(c.outputs.dir == "outdir");
    CHECK(c.elliptic.backend == EllipticBackend::cg);
    CHECK(c.elliptic.rtol == 1e-9);
    CHECK(c.config_hash != 0);
}

TEST_CASE("unknown keys are rejected with the key named") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"grids": {"nx": 4, "ny": 4}})", "x"),
                         doctest::Contains("grids"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"grid": {"nx": 8, "ny": 8, "nz": 8}})", "x"),
        doctest::Contains("nz"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"params": {"alpha":1,"beta":1,"gamma":1,"delta":1,"chi":1,"xi":1,"mu":1}})",
                     "x"),
        doctest::Contains("mu"), ConfigError);
}

TEST_CASE("missing keys are named in diagnostics") {
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"domain": {"shape": {"type": "disk", "radius": 1.0}}})", "x"),
        doctest::Contains("x0"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"nx": 16}})", "x"),
                         doctest::Contains("ny"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"time": {"dt0": 1e-3, "t_end": 1.0}})", "x"),
                         doctest::Contains("output_interval"), ConfigError);
}

TEST_CASE("missing blocks are named by the require accessors") {
    const ExperimentConfig c = parse_config(R"({"grid": {"nx": 8, "ny": 8}})", "x");
    CHECK_THROWS_WITH_AS(require_domain(c), doctest::Contains("domain"), ConfigError);
    CHECK_THROWS_WITH_AS(require_time(c), doctest::Contains("time"), ConfigError);
    CHECK_NOTHROW(require_grid(c));
}

TEST_CASE("nonpositive numeric entries are rejected") {
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"params": {"alpha":0,"beta":1,"gamma":1,"delta":1,"chi":1,"xi":1}})",
                     "x"),
        doctest::Contains("alpha"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid": {"nx": -4, "ny": 8}})", "x"), ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"domain": {"shape": {"type": "disk", "radius": -1}, "x0": [0,0]}})",
                     "x"),
        ConfigError);
}

TEST_CASE("shape variants parse") {
    const ExperimentConfig disk = parse_config(
        R"({"domain": {"shape": {"type": "disk", "radius": 2.0}, "x0": [0.5, 0.0]}})", "x");
    CHECK(std::holds_alternative<DiskSpec>(disk.domain->shape));

    const ExperimentConfig poly = parse_config(
        R"({"domain": {"shape": {"type": "polygon",
            "vertices": [[0,0],[1,0],[1,1],[0,1]]}, "x0": [0.5, 0.5]}})",
        "x");
    REQUIRE(std::holds_alternative<PolygonSpec>(poly.domain->shape));
    CHECK(std::get<PolygonSpec>(poly.domain->shape).vertices.size() == 4);

    CHECK_THROWS_WITH_AS(
        parse_config(R"({"domain": {"shape": {"type": "triangle"}, "x0": [0,0]}})", "x"),
        doctest::Contains("triangle"), ConfigError);
}

TEST_CASE("config hash is deterministic and byte-sensitive") {
    const ExperimentConfig a = parse_config(kFullConfig, "a");
    const ExperimentConfig b = parse_config(kFullConfig, "b");
    CHECK(a.config_hash == b.config_hash);
    std::string tweaked = kFullConfig;
    tweaked.replace(tweaked.find("0.5"), 3, "0.6");
    CHECK(parse_config(tweaked, "c").config_hash != a.config_hash);
}

TEST_CASE("make_grid embeds the shape bounding box") {
    const ExperimentConfig c = parse_config(
        R"({"domain": {"shape": {"type": "disk", "radius": 1.5}, "x0": [0,0]},
            "grid": {"nx": 32, "ny": 32}})",
        "x");
    const Grid g = make_grid(c);
    CHECK(g.extent.x_min == doctest::Approx(-1.5));
    CHECK(g.extent.x_max == doctest::Approx(1.5));
    CHECK(g.extent.y_min == doctest::Approx(-1.5));
    CHECK(g.extent.y_max == doctest::Approx(1.5));
}

TEST_CASE("ctilde block: user mode needs a nonnegative value") {
    const ExperimentConfig c =
        parse_config(R"({"ctilde": {"mode": "user", "value": 0.7}})", "x");
    CHECK(c.ctilde->mode == CtildeMode::user);
    CHECK(c.ctilde->value == 0.7);
    CHECK_THROWS_AS(parse_config(R"({"ctilde": {"mode": "user", "value": -0.1}})", "x"),
                    ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"ctilde": {"mode": "guess"}})", "x"),
                         doctest::Contains("guess"), ConfigError);
}
