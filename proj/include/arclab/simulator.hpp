#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arclab/elliptic.hpp"
#include "arclab/grid.hpp"
#include "arclab/initial_data.hpp"
#include "arclab/params.hpp"

namespace arclab {

// Absolute tolerance below zero allowed in nonnegative fields.
inline constexpr double kTolNeg = 1e-12;

// Relative mass drift tolerated over a run before the trajectory is flagged.
inline constexpr double kMassDriftTol = 1e-9;

struct SimState {
    double t = 0.0;
    ScalarField u, v, w;
    long step_count = 0;
};

struct TimeControls {
    double dt0 = 1e-3;
    double t_end = 1.0;
    double output_interval = 0.01;
    double blowup_umax_factor = 1e6; // blow-up when u_max exceeds this times u_max(0)
    double blowup_energy_factor = 1e8; // or when E exceeds this times E(0)
    double cfl = 0.4;
    double dt_min_factor = 1e-10; // underflow when dt < dt_min_factor * dt0
};

enum class RunStatus { completed, blowup_detected, step_underflow, invariant_violation };

const char* run_status_name(RunStatus status);

struct TrajectoryRecord {
    double t = 0.0;
    double E = 0.0;      // integral of u^2
    double mass = 0.0;   // integral of u
    double u_max = 0.0;
    double dEdt_numeric = 0.0; // filled by finite differencing the E samples
    double odi_rhs = 0.0;      // A E^(3/2) + B E^2, filled by annotate_odi
    double odi_margin = 0.0;   // odi_rhs - dEdt_numeric
    double dt = 0.0;           // step size in effect at this record
    // Diagnostics kept in memory but not exported to CSV:
    double dEdt_model = 0.0; // -2 int |grad u|^2 + sigma int u^3 + xi delta int u^2 w - chi beta int u^2 v
    double mass_v = 0.0;     // integral of v
    double mass_w = 0.0;     // integral of w
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    RunStatus status = RunStatus::completed;
    std::string status_detail;
    double E0 = 0.0;
    double mass0 = 0.0;
    double u0_max = 0.0;
    int cfl_halvings = 0;
    std::optional<double> blowup_time; // last completed t when status is blowup_detected
};

// Solves the two concentration equations for the given density and assembles
// a consistent state.
SimState make_state(ScalarField u0, const ModelParams& params,
                    const EllipticOptions& elliptic);

// One step of the splitting scheme: explicit conservative upwind transport
// along chi grad v - xi grad w, then backward-Euler diffusion through the
// screened-Poisson solver, then fresh elliptic solves for v and w. Throws
// CflError when dt exceeds cfl * min(hx, hy) / max |velocity|.
SimState step(const SimState& state, const ModelParams& params, double dt,
              const EllipticOptions& elliptic, double cfl = 0.4);

struct RunSetup {
    Grid grid;
    ModelParams params;
    InitialSpec initial;
    TimeControls time;
    EllipticOptions elliptic;
};

// Advances until t_end, blow-up detection, or step underflow, recording one
// row per output interval. dt halves on CFL violations and doubles (capped
// at dt0) after 20 accepted steps. Mass and nonnegativity are checked at
// every record; violations end the run with invariant_violation.
Trajectory run(const RunSetup& setup,
               const std::function<void(const SimState&)>& on_record = {});

// Second-order finite differences of the recorded E samples (centered inside,
// one-sided at the ends). Called by run(); exposed for tests.
void fill_dEdt_numeric(Trajectory& trajectory);

// CSV export with the pinned column set; header_comment lines are emitted
// first, the terminal status last as a trailing comment row.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::string& header_comment);

} // namespace arclab
