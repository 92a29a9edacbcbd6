#include "arclab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "arclab/errors.hpp"
#include "arclab/field_ops.hpp"

namespace arclab {

const char* run_status_name(RunStatus status) {
    switch (status) {
        case RunStatus::completed: return "completed";
        case RunStatus::blowup_detected: return "blowup_detected";
        case RunStatus::step_underflow: return "step_underflow";
        case RunStatus::invariant_violation: return "invariant_violation";
    }
    return "unknown";
}

SimState make_state(ScalarField u0, const ModelParams& params,
                    const EllipticOptions& elliptic) {
    params.validate();
    u0.check_finite("u0");
    SimState s;
    s.t = 0.0;
    s.step_count = 0;
    s.v = solve_screened_poisson(u0, params.alpha, params.beta, elliptic);
    s.w = solve_screened_poisson(u0, params.gamma, params.delta, elliptic);
    s.u = std::move(u0);
    return s;
}

namespace {

// Advective velocity chi grad v - xi grad w evaluated at interior faces, and
// the largest magnitude for the CFL bound. Boundary faces carry zero flux.
struct FaceVelocities {
    std::vector<double> ax; // (nx + 1) * ny, x-faces
    std::vector<double> ay; // nx * (ny + 1), y-faces
    double amax = 0.0;
};

FaceVelocities face_velocities(const SimState& state, const ModelParams& params) {
    const Grid& g = state.u.grid;
    FaceVelocities fv;
    fv.ax.assign(static_cast<size_t>((g.nx + 1) * g.ny), 0.0);
    fv.ay.assign(static_cast<size_t>(g.nx * (g.ny + 1)), 0.0);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 1; i < g.nx; ++i) {
            const double dv = state.v.at(i, j) - state.v.at(i - 1, j);
            const double dw = state.w.at(i, j) - state.w.at(i - 1, j);
            const double a = (params.chi * dv - params.xi * dw) / g.hx;
            fv.ax[static_cast<size_t>(j * (g.nx + 1) + i)] = a;
            fv.amax = std::max(fv.amax, std::abs(a));
        }
    }
    for (int j = 1; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double dv = state.v.at(i, j) - state.v.at(i, j - 1);
            const double dw = state.w.at(i, j) - state.w.at(i, j - 1);
            const double a = (params.chi * dv - params.xi * dw) / g.hy;
            fv.ay[static_cast<size_t>(j * g.nx + i)] = a;
            fv.amax = std::max(fv.amax, std::abs(a));
        }
    }
    return fv;
}

} // namespace

SimState step(const SimState& state, const ModelParams& params, double dt,
              const EllipticOptions& elliptic, double cfl) {
    if (!(dt > 0.0)) throw std::invalid_argument("step needs dt > 0");
    const Grid& g = state.u.grid;

    const FaceVelocities fv = face_velocities(state, params);
    if (fv.amax > 0.0) {
        const double dt_limit = cfl * std::min(g.hx, g.hy) / fv.amax;
        if (dt > dt_limit) {
            std::ostringstream msg;
            msg << "CFL violation: dt " << dt << " exceeds stability bound " << dt_limit;
            throw CflError(msg.str(), dt_limit);
        }
    }

    // Explicit conservative transport with first-order upwinding of u at the
    // faces; boundary fluxes vanish, so the cell sum telescopes exactly.
    ScalarField ustar = state.u;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            auto flux_x = [&](int face) -> double {
                const double a = fv.ax[static_cast<size_t>(j * (g.nx + 1) + face)];
                if (a == 0.0) return 0.0;
                const double up = a > 0.0 ? state.u.at(face - 1, j) : state.u.at(face, j);
                return a * up;
            };
            auto flux_y = [&](int face) -> double {
                const double a = fv.ay[static_cast<size_t>(face * g.nx + i)];
                if (a == 0.0) return 0.0;
                const double up = a > 0.0 ? state.u.at(i, face - 1) : state.u.at(i, face);
                return a * up;
            };
            const double div = (flux_x(i + 1) - flux_x(i)) / g.hx + (flux_y(j + 1) - flux_y(j)) / g.hy;
            ustar.at(i, j) -= dt * div;
        }
    }

    // Backward-Euler diffusion: (I/dt - lap) u_new = ustar / dt, reusing the
    // screened-Poisson machinery; preserves the cell sum up to solver error.
    const double idt = 1.0 / dt;
    SimState next;
    next.u = solve_screened_poisson(ustar, idt, idt, elliptic, &ustar);
    next.v = solve_screened_poisson(next.u, params.alpha, params.beta, elliptic, &state.v);
    next.w = solve_screened_poisson(next.u, params.gamma, params.delta, elliptic, &state.w);
    next.t = state.t + dt;
    next.step_count = state.step_count + 1;
    return next;
}

namespace {

TrajectoryRecord make_record(const SimState& state, const ModelParams& params, double dt) {
    TrajectoryRecord r;
    r.t = state.t;
    r.E = integrate_product(state.u, state.u);
    r.mass = integrate(state.u);
    r.u_max = max_value(state.u);
    r.dt = dt;
    r.dEdt_numeric = std::numeric_limits<double>::quiet_NaN();
    r.odi_rhs = std::numeric_limits<double>::quiet_NaN();
    r.odi_margin = std::numeric_limits<double>::quiet_NaN();
    r.mass_v = integrate(state.v);
    r.mass_w = integrate(state.w);
    r.dEdt_model = -2.0 * integrate_grad_sq(state.u) +
                   params.sigma() * integrate_pow_clipped(state.u, 3.0) +
                   params.xi * params.delta * integrate_sq_product(state.u, state.w) -
                   params.chi * params.beta * integrate_sq_product(state.u, state.v);
    return r;
}

// Derivative of the interpolating parabola through three samples, evaluated
// at one of the nodes; handles non-uniform spacing.
double three_point_derivative(double x0, double f0, double x1, double f1, double x2, double f2,
                              double at) {
    const double d0 = (at - x1) + (at - x2);
    const double d1 = (at - x0) + (at - x2);
    const double d2 = (at - x0) + (at - x1);
    return f0 * d0 / ((x0 - x1) * (x0 - x2)) + f1 * d1 / ((x1 - x0) * (x1 - x2)) +
           f2 * d2 / ((x2 - x0) * (x2 - x1));
}

} // namespace

void fill_dEdt_numeric(Trajectory& trajectory) {
    auto& rec = trajectory.records;
    const size_t n = rec.size();
    if (n < 3) return;
    for (size_t i = 0; i < n; ++i) {
        const size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
        rec[i].dEdt_numeric = three_point_derivative(rec[a].t, rec[a].E, rec[a + 1].t,
                                                     rec[a + 1].E, rec[a + 2].t, rec[a + 2].E,
                                                     rec[i].t);
    }
}

Trajectory run(const RunSetup& setup, const std::function<void(const SimState&)>& on_record) {
    const TimeControls& tc = setup.time;
    if (!(tc.dt0 > 0.0) || !(tc.t_end > 0.0) || !(tc.output_interval > 0.0))
        throw ConfigError("time controls dt0, t_end, output_interval must be positive");

    ScalarField u0 = make_initial_data(setup.initial, setup.grid);
    SimState state = make_state(std::move(u0), setup.params, setup.elliptic);

    Trajectory traj;
    traj.E0 = integrate_product(state.u, state.u);
    traj.mass0 = integrate(state.u);
    traj.u0_max = max_value(state.u);
    traj.status = RunStatus::completed;

    const double dt_min = tc.dt_min_factor * tc.dt0;
    const double umax_threshold = tc.blowup_umax_factor * traj.u0_max;
    const double energy_threshold = tc.blowup_energy_factor * traj.E0;

    double dt = tc.dt0;
    int accepted = 0;

    auto record = [&](const SimState& s) -> bool {
        TrajectoryRecord r = make_record(s, setup.params, dt);
        traj.records.push_back(r);
        if (on_record) on_record(s);
        if (std::abs(r.mass - traj.mass0) > kMassDriftTol * traj.mass0) {
            traj.status = RunStatus::invariant_violation;
            std::ostringstream msg;
            msg << "mass drift " << r.mass - traj.mass0 << " at t=" << r.t
                << " exceeds tolerance " << kMassDriftTol * traj.mass0;
            traj.status_detail = msg.str();
            return false;
        }
        const double vmin = std::min(min_value(s.u), std::min(min_value(s.v), min_value(s.w)));
        if (vmin < -kTolNeg) {
            traj.status = RunStatus::invariant_violation;
            std::ostringstream msg;
            msg << "negative value " << vmin << " at t=" << r.t << " beyond tol_neg";
            traj.status_detail = msg.str();
            return false;
        }
        return true;
    };

    if (!record(state)) {
        fill_dEdt_numeric(traj);
        return traj;
    }

    double next_output = tc.output_interval;
    const double t_eps = 1e-12 * std::max(tc.output_interval, tc.t_end);

    while (state.t < tc.t_end - t_eps) {
        const double target = std::min(next_output, tc.t_end);
        double dt_try = std::min(dt, target - state.t);
        if (target - state.t - dt_try < t_eps) dt_try = target - state.t;

        SimState next;
        try {
            next = step(state, setup.params, dt_try, setup.elliptic, tc.cfl);
        } catch (const CflError&) {
            dt *= 0.5;
            ++traj.cfl_halvings;
            accepted = 0;
            if (dt < dt_min) {
                traj.status = RunStatus::step_underflow;
                std::ostringstream msg;
                msg << "dt underflow: dt=" << dt << " below " << dt_min << " at t=" << state.t;
                traj.status_detail = msg.str();
                break;
            }
            continue;
        }
        state = std::move(next);

        if (++accepted >= 20) {
            dt = std::min(2.0 * dt, tc.dt0);
            accepted = 0;
        }

        const bool blown = max_value(state.u) > umax_threshold ||
                           integrate_product(state.u, state.u) > energy_threshold;
        const bool on_output = state.t >= next_output - t_eps;
        if (on_output) next_output += tc.output_interval;

        if (blown) {
            traj.status = RunStatus::blowup_detected;
            traj.blowup_time = state.t; // last completed step
            std::ostringstream msg;
            msg << "blow-up thresholds reached at t=" << state.t;
            traj.status_detail = msg.str();
            record(state);
            break;
        }
        if (on_output || state.t >= tc.t_end - t_eps) {
            if (!record(state)) break;
        }
    }

    fill_dEdt_numeric(traj);
    return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          const std::string& header_comment) {
    if (!header_comment.empty()) out << header_comment;
    out << "t,E,mass,u_max,dEdt_numeric,odi_rhs,odi_margin,dt\n";
    char line[256];
    for (const auto& r : trajectory.records) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      r.t, r.E, r.mass, r.u_max, r.dEdt_numeric, r.odi_rhs, r.odi_margin,
                      r.dt);
        out << line;
    }
    out << "# status=" << run_status_name(trajectory.status);
    if (!trajectory.status_detail.empty()) out << " detail=\"" << trajectory.status_detail << '"';
    if (trajectory.blowup_time) out << " blowup_time=" << *trajectory.blowup_time;
    out << "\n";
}

} // namespace arclab
