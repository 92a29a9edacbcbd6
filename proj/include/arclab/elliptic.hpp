#pragma once

#include <string>

#include "arclab/grid.hpp"

namespace arclab {

// Screened Poisson solve with zero-flux boundaries:
//
//     decay_coef * phi - lap(phi) = source_coef * source
//
// The discrete operator is symmetric positive definite for decay_coef > 0.
// Two backends solve the identical discrete system:
//   cg  — matrix-free conjugate gradient, stops when the residual satisfies
//         |r|_2 <= rtol * |source_coef * source|_2; iteration cap
//         max_iter_factor * max(nx, ny).
//   dct — direct diagonalization by the cosine transform (the grid operator
//         is exactly diagonal in that basis). The residual is checked after
//         the solve and polished by a short CG run in the rare case rounding
//         leaves it above rtol.
enum class EllipticBackend { cg, dct };

struct EllipticOptions {
    EllipticBackend backend = EllipticBackend::dct;
    double rtol = 1e-10;
    int max_iter_factor = 50;
};

struct EllipticStats {
    int iterations = 0;
    double residual = 0.0;
    double rhs_norm = 0.0;
};

ScalarField solve_screened_poisson(const ScalarField& source, double source_coef,
                                   double decay_coef, const EllipticOptions& opts = {},
                                   const ScalarField* warm_start = nullptr,
                                   EllipticStats* stats = nullptr);

// decay * f - lap(f), the operator the solver inverts. Exposed for residual
// checks in tests.
ScalarField apply_screened_operator(const ScalarField& f, double decay);

EllipticBackend parse_backend(const std::string& name);

} // namespace arclab
