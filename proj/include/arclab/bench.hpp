#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arclab/elliptic.hpp"
#include "arclab/geometry.hpp"
#include "arclab/params.hpp"
#include "arclab/trial.hpp"

namespace arclab {

// Margins are RHS - LHS; a nonnegative margin means the inequality holds for
// this trial on this grid.

// Trace-type inequality:
//   int_boundary V^2 ds <= (4 m1 / 3) int V^2 + 2 (m2 - 1) int V |grad V|
double check_trace_inequality(const ScalarField& V, const GeometryConstants& geom);

// Cubic-power inequality, any c1 > 0:
//   int V^3 <= (sqrt(2) m1 / 3) (int V^2)^(3/2) + (m2^2 c1 / 16) (int V^2)^2
//              + (2 / c1) int |grad V|^2
double check_l3_inequality(const ScalarField& V, const GeometryConstants& geom, double c1);

// Bound on the screened-Poisson solution phi of
// decay phi - lap phi = gamma f:
//   int phi^3 <= (2 gamma^3 / (3 delta^2)) int f^3 + ctilde (int f^2)^(3/2)
double check_ehrling_bound(const ScalarField& f, const ModelParams& params, double ctilde,
                           const EllipticOptions& elliptic = {});

struct CtildeEstimate {
    double value = 0.0;        // safety_factor * max positive ratio over the trials
    double raw_max_ratio = 0.0;
    int n_trials = 0;
    uint64_t seed = 0;
    double safety_factor = 2.0;
    std::string argmax_description;
};

std::string ctilde_estimate_text(const CtildeEstimate& estimate);

// Empirical estimate of the smallest workable ctilde: the largest ratio
//   (int phi^3 - (2 gamma^3 / (3 delta^2)) int f^3) / (int f^2)^(3/2)
// over the sampled trial set, times a safety factor. Monotone in n_trials
// for a fixed seed because trial i depends only on (seed, i).
CtildeEstimate estimate_ctilde(const Grid& grid, const ModelParams& params, int n_trials,
                               uint64_t seed, double safety_factor = 2.0,
                               const EllipticOptions& elliptic = {});

struct BenchOptions {
    int n_trials = 100;
    uint64_t seed = 1;
    std::vector<double> c1_sweep{0.1, 1.0, 10.0};
    double tol = 1e-8;          // relative margin tolerance for violation reports
    double safety_factor = 2.0; // applied to the ctilde estimate
    EllipticOptions elliptic;
};

struct TrialRow {
    int id = 0;
    std::string family;
    std::string description;
    double trace_lhs = 0.0, trace_rhs = 0.0, trace_margin = 0.0;
    double l3_lhs = 0.0, l3_rhs_min = 0.0, l3_margin_min = 0.0, l3_c1_argmin = 0.0;
    double ehrling_lhs = 0.0, ehrling_rhs = 0.0, ehrling_margin = 0.0;
    bool suspected = false;  // negative margin beyond tolerance on the base grid
    bool confirmed = false;  // still negative after the 2x refinement recheck
};

struct BenchReport {
    std::vector<TrialRow> rows;
    CtildeEstimate ctilde;
    int suspected_violations = 0;
    int confirmed_violations = 0;
    int heldout_violations = 0; // Ehrling margin < 0 on the fresh held-out set
    int heldout_trials = 0;
};

// Full bench pass: margins of both inequalities for every sampled trial with
// refinement confirmation of suspected violations, the ctilde estimate from
// the same trials, and an equal-size held-out recheck of the estimated bound.
BenchReport run_bench(const Grid& grid, const GeometryConstants& geom,
                      const ModelParams& params, const BenchOptions& opts);

void write_bench_csv(std::ostream& out, const BenchReport& report,
                     const std::string& header_comment);

} // namespace arclab
