#pragma once

#include <optional>
#include <string>

#include "arclab/geometry.hpp"
#include "arclab/params.hpp"
#include "arclab/simulator.hpp"

namespace arclab {

// Critical initial mass 4 pi / sigma; empty when sigma <= 0.
std::optional<double> critical_mass(const ModelParams& params);

struct IntermediateConstants {
    double ctilde1 = 0.0; // coefficient of the cubic term after the Young split
    double ctilde2 = 0.0; // coefficient of the E^(3/2) remainder, linear in ctilde
};

// General-epsilon forms:
//   ctilde1(eps) = alpha chi - xi gamma + xi delta eps + (2 xi gamma^3 / (9 delta)) (3 eps / 2)^-2
//   ctilde2(eps) = (ctilde xi delta / 3) (3 eps / 2)^-2
// At eps = gamma / delta these reduce to alpha chi + 8 xi gamma delta / 81
// and 4 ctilde xi delta^3 / (27 gamma^2).
IntermediateConstants intermediate_constants(const ModelParams& params, double ctilde,
                                             double epsilon);

struct OdiConstants {
    double epsilon = 0.0;
    double c1 = 0.0; // gradient-absorption constant, bound to ctilde1(epsilon)
    double ctilde1 = 0.0;
    double ctilde2 = 0.0;
    double A = 0.0;       // ctilde1 (sqrt 2 / 3) m1 + ctilde2
    double B = 0.0;       // ctilde1^2 m2^2 / 16
    double A_alt = 0.0;   // alternative published form: [alpha chi + ctilde2] (sqrt 2 / 3) m1 + ctilde2
};

// epsilon defaults to gamma / delta. Binding c1 := ctilde1(epsilon) cancels
// the gradient terms exactly; the residual gradient coefficient is asserted
// to vanish.
OdiConstants constants_AB(const ModelParams& params, const GeometryConstants& geom,
                          double ctilde, std::optional<double> epsilon = {});

// 2 / (A sqrt(E0)).
double lower_bound_explicit(double A, double E0);

// Closed-form time for E to grow from E0 to E_target under equality in
// dE/dt = A E^(3/2) + B E^2. E_target may be +infinity (limit form). Throws
// std::invalid_argument when E_target < E0, A <= 0, or B < 0.
double lower_bound_implicit(double A, double B, double E0, double E_target);

struct BoundReport {
    double ctilde = 0.0;
    std::string ctilde_provenance; // "user" or "estimated(...)"
    double epsilon = 0.0;
    double c1 = 0.0;
    double ctilde1 = 0.0;
    double ctilde2 = 0.0;
    double A = 0.0;
    double B = 0.0;
    double A_alt = 0.0;
    double sigma = 0.0;
    std::optional<double> critical_mass;
    bool out_of_regime = false; // sigma <= 0
    double E0 = 0.0;
    double t_lower_explicit = 0.0;
    double t_lower_implicit = 0.0; // E_target = infinity
};

// Assembles every constant and both blow-up-time lower bounds. Throws
// std::invalid_argument when E0 <= 0.
BoundReport bound_report(const ModelParams& params, const GeometryConstants& geom,
                         double ctilde, const std::string& ctilde_provenance, double E0,
                         std::optional<double> epsilon = {});

std::string bound_report_text(const BoundReport& report);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);

// Fills odi_rhs = A E^(3/2) + B E^2 and odi_margin = odi_rhs - dEdt_numeric.
void annotate_odi(Trajectory& trajectory, double A, double B);

struct OdiCheckReport {
    double min_margin = 0.0;
    std::optional<double> first_violation_time;
    int violations = 0;
    int n_checked = 0;
    double compliant_fraction = 1.0;
    double tolerance = 0.0;
};

// Checks every interior record; a record violates only if
// margin < -tolerance * (1 + A E^(3/2) + B E^2). Needs >= 3 records.
OdiCheckReport check_odi(const Trajectory& trajectory, double A, double B,
                         double tolerance);

// Last time the energy returns to E(0): largest recorded t with E(t) <= E(0).
double find_t1(const Trajectory& trajectory);

struct EpsilonOptimum {
    double epsilon = 0.0;
    double A = 0.0;
};

// Labeled extension, never the default: golden-section minimization of
// A(epsilon) over log epsilon.
EpsilonOptimum minimize_A_over_epsilon(const ModelParams& params,
                                       const GeometryConstants& geom, double ctilde);

} // namespace arclab
