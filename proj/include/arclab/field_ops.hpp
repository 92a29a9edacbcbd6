#pragma once

#include <iosfwd>

#include "arclab/grid.hpp"

namespace arclab {

// Discrete operators on cell-centered fields with zero-flux (Neumann)
// boundaries. Ghost values are set by reflection: even reflection for scalar
// fields, odd reflection of the normal component for vector fields, which
// makes divergence the exact negative adjoint of gradient under the midpoint
// inner product.

// Midpoint-rule cell sum, exact for cellwise-constant data.
double integrate(const ScalarField& f);

// Integral of the pointwise product f * g.
double integrate_product(const ScalarField& f, const ScalarField& g);

// Integral of max(f, 0)^p; negative round-off is clipped only inside the
// power so fractional exponents stay defined.
double integrate_pow_clipped(const ScalarField& f, double p);

// Integral of |grad f|^2 using the centered gradient below.
double integrate_grad_sq(const ScalarField& f);

// Integral of f^2 * g (f squared, no clipping).
double integrate_sq_product(const ScalarField& f, const ScalarField& g);

// Centered second-order gradient with even-reflection ghosts.
VectorField gradient(const ScalarField& f);

// Centered second-order divergence with odd-reflection ghosts for the
// normal component at each wall.
ScalarField divergence(const VectorField& g);

// Five-point Laplacian with even-reflection ghosts (discrete homogeneous
// Neumann condition); integrates to zero exactly.
ScalarField laplacian_neumann(const ScalarField& f);

// Boundary line integral: second-order extrapolation of cell values to each
// boundary face center, times the face length.
double integrate_boundary(const ScalarField& f);

double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
double max_abs(const ScalarField& f);

// Euclidean norm of the raw value vector (no cell-area weight).
double vec_norm(const std::vector<double>& v);

// Plain-text CSV export: metadata header line, then one x1,x2,value row per
// cell.
void write_field_csv(std::ostream& out, const ScalarField& f);

} // namespace arclab
