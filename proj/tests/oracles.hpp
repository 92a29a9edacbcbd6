#pragma once

// Test-only oracles, independent of the library implementations they check.

#include <cmath>
#include <functional>

namespace oracles {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb, double whole,
                                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Time for the energy to travel from E0 to E_target under equality in
// dE/dt = A E^(3/2) + B E^2, computed by quadrature after the substitution
// s = E^(-1/2), which maps the (possibly infinite) energy range onto the
// bounded interval [1/sqrt(E_target), 1/sqrt(E0)]:
//   T = int 2 s / (A s + B) ds
inline double odi_time_by_quadrature(double A, double B, double E0, double E_target,
                                     double tol = 1e-13) {
    const double s0 = 1.0 / std::sqrt(E0);
    const double st = std::isinf(E_target) ? 0.0 : 1.0 / std::sqrt(E_target);
    return adaptive_simpson([A, B](double s) { return 2.0 * s / (A * s + B); }, st, s0, tol);
}

} // namespace oracles
