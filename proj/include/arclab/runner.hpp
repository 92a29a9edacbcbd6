#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "arclab/config.hpp"

namespace arclab {

// Exit codes: 0 success, 1 check failure, 2 config error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<uint64_t> seed;
};

int cmd_geometry(const ExperimentConfig& config, std::ostream& out);
int cmd_bound(const ExperimentConfig& config, std::ostream& out);
int cmd_simulate(const ExperimentConfig& config, std::ostream& out);
int cmd_bench(const ExperimentConfig& config, std::ostream& out);
int cmd_estimate_ctilde(const ExperimentConfig& config, std::ostream& out);
int cmd_verify(const ExperimentConfig& config, std::ostream& out);

// Loads the config, applies overrides, dispatches, and maps exceptions to
// exit codes. err receives diagnostics.
int run_command(const std::string& command, const std::string& config_path,
                const CliOverrides& overrides, std::ostream& out, std::ostream& err);

} // namespace arclab
