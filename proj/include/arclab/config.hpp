#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arclab/elliptic.hpp"
#include "arclab/geometry.hpp"
#include "arclab/initial_data.hpp"
#include "arclab/params.hpp"
#include "arclab/simulator.hpp"

namespace arclab {

// One experiment per JSON file. Blocks are parsed strictly: unknown keys are
// rejected with the offending key named. Subcommands validate the presence of
// the blocks they need, so a geometry-only file may omit the rest.

struct DomainBlock {
    ShapeSpec shape;
    Vec2 x0;
    int boundary_resolution = 256;
};

struct GridBlock {
    int nx = 0;
    int ny = 0;
};

enum class CtildeMode { user, estimate };

struct CtildeBlock {
    CtildeMode mode = CtildeMode::user;
    double value = 0.0;   // user mode
    int n_trials = 64;    // estimate mode
    uint64_t seed = 1;
    double safety_factor = 2.0;
};

struct BenchBlock {
    int n_trials = 100;
    uint64_t seed = 1;
};

struct OutputsBlock {
    std::string dir = ".";
    std::string trajectory = "trajectory.csv";
    std::string report = "bound_report.txt";
    std::string bench = "bench.csv";
    std::vector<double> snapshot_times;
};

struct ExperimentConfig {
    std::optional<DomainBlock> domain;
    std::optional<GridBlock> grid;
    std::optional<ModelParams> params;
    std::optional<InitialSpec> initial;
    std::optional<TimeControls> time;
    std::optional<CtildeBlock> ctilde;
    std::optional<BenchBlock> bench;
    OutputsBlock outputs;
    EllipticOptions elliptic;
    uint64_t config_hash = 0;
    std::string path;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text, const std::string& path);

// Accessors that throw ConfigError naming the missing block.
const DomainBlock& require_domain(const ExperimentConfig& config);
const GridBlock& require_grid(const ExperimentConfig& config);
const ModelParams& require_params(const ExperimentConfig& config);
const InitialSpec& require_initial(const ExperimentConfig& config);
const TimeControls& require_time(const ExperimentConfig& config);
const CtildeBlock& require_ctilde(const ExperimentConfig& config);

// Grid over the bounding box of the configured shape (the rectangle itself
// for rectangles; disks and polygons are embedded in their bounding box).
Grid make_grid(const ExperimentConfig& config);

} // namespace arclab
