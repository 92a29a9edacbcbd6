#include "arclab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "arclab/analysis.hpp"
#include "arclab/bench.hpp"
#include "arclab/errors.hpp"
#include "arclab/field_ops.hpp"
#include "arclab/version.hpp"

namespace arclab {

namespace {

namespace fs = std::filesystem;

std::string out_path(const ExperimentConfig& config, const std::string& name) {
    fs::create_directories(config.outputs.dir);
    return (fs::path(config.outputs.dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw NumericalError("cannot open output file '" + path + "'");
    return f;
}

struct CtildeValue {
    double value = 0.0;
    std::string provenance;
};

CtildeValue resolve_ctilde(const ExperimentConfig& config, const Grid& grid) {
    const CtildeBlock& block = require_ctilde(config);
    if (block.mode == CtildeMode::user) return {block.value, "user"};
    const CtildeEstimate est =
        estimate_ctilde(grid, require_params(config), block.n_trials, block.seed,
                        block.safety_factor, config.elliptic);
    std::ostringstream prov;
    prov << "estimated(n_trials=" << est.n_trials << ";seed=" << est.seed
         << ";safety_factor=" << est.safety_factor << ")";
    return {est.value, prov.str()};
}

// Energy of the initial data over the configured shape. Constant data uses
// the closed-form area; other kinds use midpoint quadrature restricted to
// cells whose centers fall inside the shape.
double initial_energy(const ExperimentConfig& config, const Grid& grid) {
    const DomainBlock& domain = require_domain(config);
    const InitialSpec& initial = require_initial(config);
    if (const auto* c = std::get_if<ConstantIC>(&initial))
        return c->value * c->value * shape_area(domain.shape);
    const ScalarField u0 = make_initial_data(initial, grid);
    double sum = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (shape_contains(domain.shape, grid.center(i, j)))
                sum += u0.at(i, j) * u0.at(i, j);
    return sum * grid.cell_area();
}

struct SimulationResult {
    Grid grid;
    Trajectory trajectory;
    GeometryConstants run_geom; // constants of the simulated rectangle
    CtildeValue ctilde;
    BoundReport bounds; // with E0 from the trajectory
};

SimulationResult simulate_from_config(const ExperimentConfig& config,
                                      const std::function<void(const SimState&)>& on_record) {
    RunSetup setup;
    setup.grid = make_grid(config);
    setup.params = require_params(config);
    setup.initial = require_initial(config);
    setup.time = require_time(config);
    setup.elliptic = config.elliptic;

    SimulationResult result;
    result.grid = setup.grid;
    result.run_geom = compute_rect_constants(setup.grid.extent, require_domain(config).x0);
    result.ctilde = resolve_ctilde(config, setup.grid);
    result.trajectory = run(setup, on_record);
    result.bounds = bound_report(setup.params, result.run_geom, result.ctilde.value,
                                 result.ctilde.provenance, result.trajectory.E0);
    annotate_odi(result.trajectory, result.bounds.A, result.bounds.B);
    return result;
}

void write_bound_report_files(const ExperimentConfig& config, const BoundReport& report) {
    const std::string header = output_header_comment(config.config_hash);
    auto txt = open_out(out_path(config, config.outputs.report));
    txt << header << bound_report_text(report);
    const fs::path csv_name = fs::path(config.outputs.report).replace_extension(".csv");
    auto csv = open_out(out_path(config, csv_name.string()));
    csv << header << bound_report_csv_header() << bound_report_csv_row(report);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

int cmd_geometry(const ExperimentConfig& config, std::ostream& out) {
    const DomainBlock& block = require_domain(config);
    const DomainGeometry domain =
        make_domain(block.shape, block.x0, block.boundary_resolution);
    const GeometryConstants gc = compute_geometry_constants(domain);
    out << "shape=" << shape_name(block.shape) << "\n";
    out << "rho0=" << fmt(gc.rho0) << "\n";
    out << "d=" << fmt(gc.d) << "\n";
    out << "m1=" << fmt(gc.m1) << "\n";
    out << "m2=" << fmt(gc.m2) << "\n";
    out << "area=" << fmt(gc.area) << "\n";
    out << "perimeter=" << fmt(gc.perimeter) << "\n";
    out << "boundary_samples=" << domain.boundary_samples.size() << "\n";
    out << "sampled_rho0=" << fmt(sampled_rho0(domain)) << "\n";
    out << "sampled_d=" << fmt(sampled_d(domain)) << "\n";
    return kExitOk;
}

int cmd_bound(const ExperimentConfig& config, std::ostream& out) {
    const DomainBlock& block = require_domain(config);
    const Grid grid = make_grid(config);
    const DomainGeometry domain =
        make_domain(block.shape, block.x0, block.boundary_resolution);
    const GeometryConstants gc = compute_geometry_constants(domain);
    const CtildeValue ctilde = resolve_ctilde(config, grid);
    const double E0 = initial_energy(config, grid);
    const BoundReport report = bound_report(require_params(config), gc, ctilde.value,
                                            ctilde.provenance, E0);
    out << bound_report_text(report);
    write_bound_report_files(config, report);
    return kExitOk;
}

int cmd_estimate_ctilde(const ExperimentConfig& config, std::ostream& out) {
    const CtildeBlock& block = require_ctilde(config);
    const Grid grid = make_grid(config);
    const CtildeEstimate est =
        estimate_ctilde(grid, require_params(config), block.n_trials, block.seed,
                        block.safety_factor, config.elliptic);
    out << ctilde_estimate_text(est);
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& out) {
    // Field snapshots: written at the first record whose time reaches each
    // requested snapshot time.
    std::vector<double> wanted = config.outputs.snapshot_times;
    std::sort(wanted.begin(), wanted.end());
    size_t next_snap = 0;
    auto on_record = [&](const SimState& s) {
        while (next_snap < wanted.size() && s.t >= wanted[next_snap] - 1e-12) {
            char name[64];
            std::snprintf(name, sizeof name, "u_t%.6g.csv", s.t);
            auto f = open_out(out_path(config, name));
            f << output_header_comment(config.config_hash);
            write_field_csv(f, s.u);
            ++next_snap;
        }
    };

    const SimulationResult result = simulate_from_config(config, on_record);
    const Trajectory& traj = result.trajectory;

    auto csv = open_out(out_path(config, config.outputs.trajectory));
    write_trajectory_csv(csv, traj, output_header_comment(config.config_hash));

    const MassClassification cls = classify_mass(
        require_params(config), make_initial_data(require_initial(config), result.grid));

    out << "status=" << run_status_name(traj.status) << "\n";
    if (!traj.status_detail.empty()) out << "status_detail=" << traj.status_detail << "\n";
    out << "regime=" << regime_name(cls.regime) << (cls.marginal ? " (marginal)" : "") << "\n";
    out << "records=" << traj.records.size() << "\n";
    out << "E0=" << fmt(traj.E0) << "\n";
    out << "mass0=" << fmt(traj.mass0) << "\n";
    if (!traj.records.empty()) {
        out << "t_final=" << fmt(traj.records.back().t) << "\n";
        out << "E_final=" << fmt(traj.records.back().E) << "\n";
        out << "u_max_final=" << fmt(traj.records.back().u_max) << "\n";
    }
    out << "cfl_halvings=" << traj.cfl_halvings << "\n";
    if (traj.blowup_time) out << "blowup_time=" << fmt(*traj.blowup_time) << "\n";
    out << "ctilde=" << fmt(result.ctilde.value) << " (" << result.ctilde.provenance << ")\n";
    out << "A=" << fmt(result.bounds.A) << " B=" << fmt(result.bounds.B) << "\n";
    out << "trajectory_file=" << out_path(config, config.outputs.trajectory) << "\n";

    if (traj.status == RunStatus::invariant_violation) return kExitNumericalError;
    return kExitOk;
}

int cmd_bench(const ExperimentConfig& config, std::ostream& out) {
    const DomainBlock& domain = require_domain(config);
    const Grid grid = make_grid(config);
    // The bench always runs on the grid rectangle; its geometry constants
    // are the ones entering the inequalities being checked.
    const GeometryConstants gc = compute_rect_constants(grid.extent, domain.x0);

    BenchOptions opts;
    if (config.bench) {
        opts.n_trials = config.bench->n_trials;
        opts.seed = config.bench->seed;
    }
    if (config.ctilde && config.ctilde->mode == CtildeMode::estimate)
        opts.safety_factor = config.ctilde->safety_factor;
    opts.elliptic = config.elliptic;

    const BenchReport report = run_bench(grid, gc, require_params(config), opts);
    auto csv = open_out(out_path(config, config.outputs.bench));
    write_bench_csv(csv, report, output_header_comment(config.config_hash));

    out << "n_trials=" << opts.n_trials << "\n";
    out << "seed=" << opts.seed << "\n";
    out << "ctilde_estimate=" << fmt(report.ctilde.value) << "\n";
    out << "suspected_violations=" << report.suspected_violations << "\n";
    out << "confirmed_violations=" << report.confirmed_violations << "\n";
    out << "heldout_violations=" << report.heldout_violations << "/" << report.heldout_trials
        << "\n";
    out << "bench_file=" << out_path(config, config.outputs.bench) << "\n";

    if (report.confirmed_violations > 0 || report.heldout_violations > 0)
        return kExitCheckFailed;
    return kExitOk;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out) {
    const SimulationResult result = simulate_from_config(config, {});
    const Trajectory& traj = result.trajectory;

    auto csv = open_out(out_path(config, config.outputs.trajectory));
    write_trajectory_csv(csv, traj, output_header_comment(config.config_hash));
    write_bound_report_files(config, result.bounds);

    bool ok = true;
    out << "status=" << run_status_name(traj.status) << "\n";

    // Mass conservation across every record.
    double max_drift = 0.0;
    for (const auto& r : traj.records)
        max_drift = std::max(max_drift, std::abs(r.mass - traj.mass0));
    const bool mass_ok =
        traj.status != RunStatus::invariant_violation && max_drift <= kMassDriftTol * traj.mass0;
    out << "check_mass=" << (mass_ok ? "ok" : "FAIL") << " max_drift=" << fmt(max_drift)
        << " tolerance=" << fmt(kMassDriftTol * traj.mass0) << "\n";
    if (!mass_ok && !traj.status_detail.empty())
        out << "  first_failure: " << traj.status_detail << "\n";
    ok = ok && mass_ok;

    // Differential-inequality compliance along the recorded energy curve.
    const double odi_tolerance = 0.05;
    if (traj.records.size() >= 3) {
        const OdiCheckReport odi = check_odi(traj, result.bounds.A, result.bounds.B, odi_tolerance);
        const bool odi_ok = odi.violations == 0;
        out << "check_odi=" << (odi_ok ? "ok" : "FAIL") << " min_margin=" << fmt(odi.min_margin)
            << " checked=" << odi.n_checked << " tolerance=" << fmt(odi_tolerance) << "\n";
        if (!odi_ok) {
            out << "  first_violation_t=" << fmt(*odi.first_violation_time)
                << " (ctilde was " << result.ctilde.provenance << ")\n";
        }
        ok = ok && odi_ok;
    } else {
        out << "check_odi=skipped (fewer than 3 records)\n";
    }

    // Bound ordering holds for every report; bound consistency additionally
    // compares the declared numeric blow-up time for blow-up runs.
    const bool order_ok = result.bounds.t_lower_implicit <= result.bounds.t_lower_explicit;
    out << "check_bound_order=" << (order_ok ? "ok" : "FAIL")
        << " t_lower_implicit=" << fmt(result.bounds.t_lower_implicit)
        << " t_lower_explicit=" << fmt(result.bounds.t_lower_explicit) << "\n";
    ok = ok && order_ok;

    if (traj.status == RunStatus::blowup_detected) {
        const double t_blow = *traj.blowup_time;
        const bool bound_ok = t_blow >= result.bounds.t_lower_implicit;
        out << "check_blowup_bound=" << (bound_ok ? "ok" : "FAIL")
            << " blowup_time=" << fmt(t_blow)
            << " t_lower_implicit=" << fmt(result.bounds.t_lower_implicit) << "\n";
        if (!bound_ok)
            out << "  bound exceeds observed blow-up time; ctilde was "
                << result.ctilde.provenance << "\n";
        ok = ok && bound_ok;

        const double t1 = find_t1(traj);
        out << "t1=" << fmt(t1)
            << " t_lower_implicit_from_t1=" << fmt(t1 + result.bounds.t_lower_implicit) << "\n";
    }

    out << "ctilde=" << fmt(result.ctilde.value) << " (" << result.ctilde.provenance << ")\n";
    out << "verify=" << (ok ? "ok" : "FAIL") << "\n";
    return ok ? kExitOk : kExitCheckFailed;
}

int run_command(const std::string& command, const std::string& config_path,
                const CliOverrides& overrides, std::ostream& out, std::ostream& err) {
    try {
        ExperimentConfig config = load_config(config_path);
        if (overrides.out_dir) config.outputs.dir = *overrides.out_dir;
        if (overrides.seed) {
            if (config.ctilde) config.ctilde->seed = *overrides.seed;
            if (config.bench) config.bench->seed = *overrides.seed;
        }

        if (command == "geometry") return cmd_geometry(config, out);
        if (command == "bound") return cmd_bound(config, out);
        if (command == "simulate") return cmd_simulate(config, out);
        if (command == "bench") return cmd_bench(config, out);
        if (command == "estimate-ctilde") return cmd_estimate_ctilde(config, out);
        if (command == "verify") return cmd_verify(config, out);
        err << "unknown command '" << command
            << "' (geometry | bound | simulate | bench | estimate-ctilde | verify)\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

} // namespace arclab
