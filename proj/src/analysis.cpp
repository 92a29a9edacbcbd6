#include "arclab/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "arclab/errors.hpp"

namespace arclab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::optional<double> critical_mass(const ModelParams& params) {
    const double sigma = params.sigma();
    if (sigma <= 0.0) return std::nullopt;
    return 4.0 * kPi / sigma;
}

IntermediateConstants intermediate_constants(const ModelParams& params, double ctilde,
                                             double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (ctilde < 0.0) throw std::invalid_argument("ctilde must be nonnegative");
    const double young = 1.0 / ((1.5 * epsilon) * (1.5 * epsilon)); // (3 eps / 2)^-2
    IntermediateConstants c;
    c.ctilde1 = params.alpha * params.chi - params.xi * params.gamma +
                params.xi * params.delta * epsilon +
                (2.0 * params.xi * std::pow(params.gamma, 3) / (9.0 * params.delta)) * young;
    c.ctilde2 = (ctilde * params.xi * params.delta / 3.0) * young;
    return c;
}

OdiConstants constants_AB(const ModelParams& params, const GeometryConstants& geom,
                          double ctilde, std::optional<double> epsilon) {
    OdiConstants out;
    out.epsilon = epsilon.value_or(params.gamma / params.delta);
    const IntermediateConstants ic = intermediate_constants(params, ctilde, out.epsilon);
    out.ctilde1 = ic.ctilde1;
    out.ctilde2 = ic.ctilde2;

    // Binding c1 to ctilde1 makes the gradient contributions cancel:
    // -2 + ctilde1 * (2 / c1) must vanish identically.
    out.c1 = out.ctilde1;
    const double residual_grad_coef = -2.0 + out.ctilde1 * (2.0 / out.c1);
    if (std::abs(residual_grad_coef) > 1e-12)
        throw NumericalError("gradient terms failed to cancel in the energy inequality");

    const double s23 = std::sqrt(2.0) / 3.0;
    out.A = out.ctilde1 * s23 * geom.m1 + out.ctilde2;
    out.B = out.ctilde1 * out.ctilde1 * geom.m2 * geom.m2 / 16.0;
    // Alternative published assembly of A: the repulsion correction enters the
    // bracket as ctilde2 instead of 8 gamma xi delta / 81.
    out.A_alt = (params.alpha * params.chi + out.ctilde2) * s23 * geom.m1 + out.ctilde2;
    return out;
}

double lower_bound_explicit(double A, double E0) {
    if (!(A > 0.0)) throw std::invalid_argument("lower_bound_explicit needs A > 0");
    if (!(E0 > 0.0)) throw std::invalid_argument("lower_bound_explicit needs E0 > 0");
    return 2.0 / (A * std::sqrt(E0));
}

double lower_bound_implicit(double A, double B, double E0, double E_target) {
    if (!(A > 0.0)) throw std::invalid_argument("lower_bound_implicit needs A > 0");
    if (B < 0.0) throw std::invalid_argument("lower_bound_implicit needs B >= 0");
    if (!(E0 > 0.0)) throw std::invalid_argument("lower_bound_implicit needs E0 > 0");
    if (E_target < E0) throw std::invalid_argument("lower_bound_implicit needs E_target >= E0");

    const double s0 = std::sqrt(E0);
    if (B == 0.0) {
        if (std::isinf(E_target)) return 2.0 / (A * s0);
        return (2.0 / A) * (1.0 / s0 - 1.0 / std::sqrt(E_target));
    }
    if (std::isinf(E_target)) {
        // Limit of the closed form as E_target grows without bound.
        const double logarg = E0 * B * B / ((A + B * s0) * (A + B * s0));
        return 2.0 / (A * s0) + (B / (A * A)) * std::log(logarg);
    }
    const double st = std::sqrt(E_target);
    const double logarg = (E0 * (A + B * st) * (A + B * st)) / (E_target * (A + B * s0) * (A + B * s0));
    return (2.0 / A) * (1.0 / s0 - 1.0 / st) + (B / (A * A)) * std::log(logarg);
}

BoundReport bound_report(const ModelParams& params, const GeometryConstants& geom,
                         double ctilde, const std::string& ctilde_provenance, double E0,
                         std::optional<double> epsilon) {
    if (!(E0 > 0.0)) throw std::invalid_argument("energy E0 must be positive");
    params.validate();
    BoundReport r;
    r.ctilde = ctilde;
    r.ctilde_provenance = ctilde_provenance;
    const OdiConstants oc = constants_AB(params, geom, ctilde, epsilon);
    r.epsilon = oc.epsilon;
    r.c1 = oc.c1;
    r.ctilde1 = oc.ctilde1;
    r.ctilde2 = oc.ctilde2;
    r.A = oc.A;
    r.B = oc.B;
    r.A_alt = oc.A_alt;
    r.sigma = params.sigma();
    r.critical_mass = critical_mass(params);
    r.out_of_regime = r.sigma <= 0.0;
    r.E0 = E0;
    r.t_lower_explicit = lower_bound_explicit(r.A, E0);
    r.t_lower_implicit =
        lower_bound_implicit(r.A, r.B, E0, std::numeric_limits<double>::infinity());
    return r;
}

std::string bound_report_text(const BoundReport& r) {
    std::ostringstream out;
    out << "ctilde=" << fmt(r.ctilde) << "\n";
    out << "ctilde_provenance=" << r.ctilde_provenance << "\n";
    out << "epsilon=" << fmt(r.epsilon) << "\n";
    out << "c1=" << fmt(r.c1) << "\n";
    out << "ctilde1=" << fmt(r.ctilde1) << "\n";
    out << "ctilde2=" << fmt(r.ctilde2) << "\n";
    out << "A=" << fmt(r.A) << "\n";
    out << "B=" << fmt(r.B) << "\n";
    out << "A_alt=" << fmt(r.A_alt) << "\n";
    out << "sigma=" << fmt(r.sigma) << "\n";
    out << "critical_mass=" << (r.critical_mass ? fmt(*r.critical_mass) : "none") << "\n";
    out << "out_of_regime=" << (r.out_of_regime ? "true" : "false") << "\n";
    out << "E0=" << fmt(r.E0) << "\n";
    out << "t_lower_explicit=" << fmt(r.t_lower_explicit) << "\n";
    out << "t_lower_implicit=" << fmt(r.t_lower_implicit) << "\n";
    return out.str();
}

std::string bound_report_csv_header() {
    return "ctilde,ctilde_provenance,epsilon,c1,ctilde1,ctilde2,A,B,A_alt,sigma,"
           "critical_mass,out_of_regime,E0,t_lower_explicit,t_lower_implicit\n";
}

std::string bound_report_csv_row(const BoundReport& r) {
    std::ostringstream out;
    out << fmt(r.ctilde) << ',' << r.ctilde_provenance << ',' << fmt(r.epsilon) << ','
        << fmt(r.c1) << ',' << fmt(r.ctilde1) << ',' << fmt(r.ctilde2) << ',' << fmt(r.A)
        << ',' << fmt(r.B) << ',' << fmt(r.A_alt) << ',' << fmt(r.sigma) << ','
        << (r.critical_mass ? fmt(*r.critical_mass) : "none") << ','
        << (r.out_of_regime ? "true" : "false") << ',' << fmt(r.E0) << ','
        << fmt(r.t_lower_explicit) << ',' << fmt(r.t_lower_implicit) << '\n';
    return out.str();
}

void annotate_odi(Trajectory& trajectory, double A, double B) {
    for (auto& r : trajectory.records) {
        r.odi_rhs = A * std::pow(std::max(r.E, 0.0), 1.5) + B * r.E * r.E;
        r.odi_margin = r.odi_rhs - r.dEdt_numeric;
    }
}

OdiCheckReport check_odi(const Trajectory& trajectory, double A, double B, double tolerance) {
    const auto& rec = trajectory.records;
    if (rec.size() < 3) throw std::invalid_argument("check_odi needs at least 3 records");
    Trajectory annotated = trajectory;
    fill_dEdt_numeric(annotated);
    annotate_odi(annotated, A, B);

    OdiCheckReport report;
    report.tolerance = tolerance;
    report.min_margin = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < annotated.records.size(); ++i) {
        const auto& r = annotated.records[i];
        ++report.n_checked;
        report.min_margin = std::min(report.min_margin, r.odi_margin);
        if (r.odi_margin < -tolerance * (1.0 + r.odi_rhs)) {
            ++report.violations;
            if (!report.first_violation_time) report.first_violation_time = r.t;
        }
    }
    report.compliant_fraction =
        report.n_checked == 0
            ? 1.0
            : 1.0 - static_cast<double>(report.violations) / report.n_checked;
    return report;
}

double find_t1(const Trajectory& trajectory) {
    const auto& rec = trajectory.records;
    if (rec.empty()) return 0.0;
    const double E0 = rec.front().E;
    for (size_t i = rec.size(); i-- > 0;) {
        if (rec[i].E <= E0) return rec[i].t;
    }
    return rec.front().t;
}

EpsilonOptimum minimize_A_over_epsilon(const ModelParams& params,
                                       const GeometryConstants& geom, double ctilde) {
    auto A_of = [&](double log_eps) {
        return constants_AB(params, geom, ctilde, std::exp(log_eps)).A;
    };
    // Golden-section on log epsilon over a generous bracket.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::log(params.gamma / params.delta) - 8.0;
    double hi = std::log(params.gamma / params.delta) + 8.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = A_of(x1), f2 = A_of(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = A_of(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = A_of(x2);
        }
    }
    const double log_eps = 0.5 * (lo + hi);
    return {std::exp(log_eps), A_of(log_eps)};
}

} // namespace arclab
