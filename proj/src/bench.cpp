#include "arclab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "arclab/errors.hpp"
#include "arclab/field_ops.hpp"

namespace arclab {

namespace {

double pow32(double x) { return x <= 0.0 ? 0.0 : x * std::sqrt(x); }

// int V |grad V| dx
double integrate_v_gradnorm(const ScalarField& V) {
    const VectorField g = gradient(V);
    double sum = 0.0;
    for (size_t k = 0; k < V.values.size(); ++k)
        sum += V.values[k] * std::hypot(g.x[k], g.y[k]);
    return sum * V.grid.cell_area();
}

} // namespace

double check_trace_inequality(const ScalarField& V, const GeometryConstants& geom) {
    ScalarField v2(V.grid);
    for (size_t k = 0; k < V.values.size(); ++k) v2.values[k] = V.values[k] * V.values[k];
    const double lhs = integrate_boundary(v2);
    const double rhs = (4.0 * geom.m1 / 3.0) * integrate(v2) +
                       2.0 * (geom.m2 - 1.0) * integrate_v_gradnorm(V);
    return rhs - lhs;
}

double check_l3_inequality(const ScalarField& V, const GeometryConstants& geom, double c1) {
    if (!(c1 > 0.0)) throw std::invalid_argument("c1 must be positive");
    const double v2 = integrate_product(V, V);
    const double lhs = integrate_pow_clipped(V, 3.0);
    const double rhs = (std::sqrt(2.0) * geom.m1 / 3.0) * pow32(v2) +
                       (geom.m2 * geom.m2 * c1 / 16.0) * v2 * v2 +
                       (2.0 / c1) * integrate_grad_sq(V);
    return rhs - lhs;
}

double check_ehrling_bound(const ScalarField& f, const ModelParams& params, double ctilde,
                           const EllipticOptions& elliptic) {
    const ScalarField phi = solve_screened_poisson(f, params.gamma, params.delta, elliptic);
    const double lhs = integrate_pow_clipped(phi, 3.0);
    const double rhs = (2.0 * std::pow(params.gamma, 3) / (3.0 * params.delta * params.delta)) *
                           integrate_pow_clipped(f, 3.0) +
                       ctilde * pow32(integrate_product(f, f));
    return rhs - lhs;
}

namespace {

// The ratio whose supremum over nonnegative sources defines the smallest
// workable ctilde.
double ehrling_ratio(const ScalarField& f, const ModelParams& params,
                     const EllipticOptions& elliptic) {
    const ScalarField phi = solve_screened_poisson(f, params.gamma, params.delta, elliptic);
    const double num =
        integrate_pow_clipped(phi, 3.0) -
        (2.0 * std::pow(params.gamma, 3) / (3.0 * params.delta * params.delta)) *
            integrate_pow_clipped(f, 3.0);
    const double den = pow32(integrate_product(f, f));
    if (den <= 0.0) return 0.0;
    return num / den;
}

} // namespace

std::string ctilde_estimate_text(const CtildeEstimate& e) {
    std::ostringstream out;
    out << "value=" << e.value << "\n";
    out << "raw_max_ratio=" << e.raw_max_ratio << "\n";
    out << "n_trials=" << e.n_trials << "\n";
    out << "seed=" << e.seed << "\n";
    out << "safety_factor=" << e.safety_factor << "\n";
    out << "argmax=" << e.argmax_description << "\n";
    return out.str();
}

CtildeEstimate estimate_ctilde(const Grid& grid, const ModelParams& params, int n_trials,
                               uint64_t seed, double safety_factor,
                               const EllipticOptions& elliptic) {
    if (n_trials < 1) throw std::invalid_argument("estimate_ctilde needs n_trials >= 1");
    params.validate();
    CtildeEstimate est;
    est.n_trials = n_trials;
    est.seed = seed;
    est.safety_factor = safety_factor;
    est.raw_max_ratio = 0.0;
    est.argmax_description = "none (all ratios nonpositive)";
    for (int i = 0; i < n_trials; ++i) {
        const TrialFunction trial = sample_trial(seed, static_cast<uint64_t>(i), grid.extent);
        const double ratio = ehrling_ratio(trial.evaluate(grid), params, elliptic);
        if (ratio > est.raw_max_ratio) {
            est.raw_max_ratio = ratio;
            est.argmax_description = trial.description;
        }
    }
    est.value = safety_factor * est.raw_max_ratio;
    return est;
}

BenchReport run_bench(const Grid& grid, const GeometryConstants& geom,
                      const ModelParams& params, const BenchOptions& opts) {
    if (opts.n_trials < 1) throw std::invalid_argument("run_bench needs n_trials >= 1");
    params.validate();

    BenchReport report;
    report.ctilde = estimate_ctilde(grid, params, opts.n_trials, opts.seed,
                                    opts.safety_factor, opts.elliptic);

    const Grid fine(grid.extent, 2 * grid.nx, 2 * grid.ny);
    report.rows.reserve(static_cast<size_t>(opts.n_trials));

    for (int i = 0; i < opts.n_trials; ++i) {
        const TrialFunction trial = sample_trial(opts.seed, static_cast<uint64_t>(i), grid.extent);
        const ScalarField V = trial.evaluate(grid);

        TrialRow row;
        row.id = i;
        row.family = trial.family();
        row.description = trial.description;

        {
            ScalarField v2(V.grid);
            for (size_t k = 0; k < V.values.size(); ++k) v2.values[k] = V.values[k] * V.values[k];
            row.trace_lhs = integrate_boundary(v2);
            row.trace_margin = check_trace_inequality(V, geom);
            row.trace_rhs = row.trace_margin + row.trace_lhs;
        }

        row.l3_lhs = integrate_pow_clipped(V, 3.0);
        row.l3_margin_min = std::numeric_limits<double>::infinity();
        for (double c1 : opts.c1_sweep) {
            const double margin = check_l3_inequality(V, geom, c1);
            if (margin < row.l3_margin_min) {
                row.l3_margin_min = margin;
                row.l3_c1_argmin = c1;
            }
        }
        row.l3_rhs_min = row.l3_margin_min + row.l3_lhs;

        {
            const ScalarField phi =
                solve_screened_poisson(V, params.gamma, params.delta, opts.elliptic);
            row.ehrling_lhs = integrate_pow_clipped(phi, 3.0);
            row.ehrling_rhs =
                (2.0 * std::pow(params.gamma, 3) / (3.0 * params.delta * params.delta)) *
                    integrate_pow_clipped(V, 3.0) +
                report.ctilde.value * pow32(integrate_product(V, V));
            row.ehrling_margin = row.ehrling_rhs - row.ehrling_lhs;
        }

        // A margin is suspect when it dips below -tol * (1 + |RHS|); suspects
        // are recomputed on the doubled grid before they may count as
        // confirmed (never report a theorem violation from quadrature error).
        auto suspect = [&](double margin, double rhs) {
            return margin < -opts.tol * (1.0 + std::abs(rhs));
        };
        row.suspected = suspect(row.trace_margin, row.trace_rhs) ||
                        suspect(row.l3_margin_min, row.l3_rhs_min);
        if (row.suspected) {
            ++report.suspected_violations;
            const ScalarField Vf = trial.evaluate(fine);
            bool confirmed = false;
            if (suspect(row.trace_margin, row.trace_rhs)) {
                const double m = check_trace_inequality(Vf, geom);
                confirmed = confirmed || suspect(m, m + integrate_boundary(Vf));
            }
            if (suspect(row.l3_margin_min, row.l3_rhs_min)) {
                const double m = check_l3_inequality(Vf, geom, row.l3_c1_argmin);
                confirmed = confirmed || suspect(m, m + integrate_pow_clipped(Vf, 3.0));
            }
            row.confirmed = confirmed;
            if (confirmed) ++report.confirmed_violations;
        }
        report.rows.push_back(std::move(row));
    }

    // Held-out Ehrling recheck with the estimated constant on a fresh,
    // equal-size trial set.
    report.heldout_trials = opts.n_trials;
    const uint64_t heldout_seed = opts.seed ^ 0x9E3779B97F4A7C15ull;
    for (int i = 0; i < opts.n_trials; ++i) {
        const TrialFunction trial =
            sample_trial(heldout_seed, static_cast<uint64_t>(i), grid.extent);
        const double margin =
            check_ehrling_bound(trial.evaluate(grid), params, report.ctilde.value, opts.elliptic);
        if (margin < 0.0) ++report.heldout_violations;
    }
    return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report,
                     const std::string& header_comment) {
    if (!header_comment.empty()) out << header_comment;
    out << "trial,family,trace_lhs,trace_rhs,trace_margin,l3_lhs,l3_rhs_min,l3_margin_min,"
           "l3_c1_argmin,ehrling_lhs,ehrling_rhs,ehrling_margin,suspected,confirmed\n";
    char line[512];
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line,
                      "%d,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d,%d\n",
                      r.id, r.family.c_str(), r.trace_lhs, r.trace_rhs, r.trace_margin,
                      r.l3_lhs, r.l3_rhs_min, r.l3_margin_min, r.l3_c1_argmin, r.ehrling_lhs,
                      r.ehrling_rhs, r.ehrling_margin, r.suspected ? 1 : 0, r.confirmed ? 1 : 0);
        out << line;
    }
    out << "# ctilde_estimate=" << report.ctilde.value
        << " raw_max_ratio=" << report.ctilde.raw_max_ratio
        << " safety_factor=" << report.ctilde.safety_factor << " seed=" << report.ctilde.seed
        << "\n";
    out << "# suspected_violations=" << report.suspected_violations
        << " confirmed_violations=" << report.confirmed_violations
        << " heldout_violations=" << report.heldout_violations << "/"
        << report.heldout_trials << "\n";
}

} // namespace arclab
