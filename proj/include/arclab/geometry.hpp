#pragma once

#include <string>
#include <variant>
#include <vector>

#include "arclab/vec2.hpp"

namespace arclab {

// Shapes are given in their own coordinates: the disk and the rectangle are
// centered at the origin, the polygon lists its vertices explicitly
// (counter-clockwise, convex). The star reference point x0 is independent of
// the shape center and may sit anywhere strictly inside.

struct DiskSpec {
    double radius = 1.0;
};

struct RectangleSpec {
    double half_width = 1.0;  // covers [-half_width, half_width]
    double half_height = 1.0; // covers [-half_height, half_height]
};

struct PolygonSpec {
    std::vector<Vec2> vertices; // CCW, convex, >= 3
};

using ShapeSpec = std::variant<DiskSpec, RectangleSpec, PolygonSpec>;

struct BoundarySample {
    Vec2 point;
    Vec2 normal;   // outward, unit length
    double weight; // arc length carried by this sample
};

struct DomainGeometry {
    ShapeSpec shape;
    Vec2 x0;
    std::vector<BoundarySample> boundary_samples;
};

struct GeometryConstants {
    double rho0 = 0.0;      // min over the boundary of (x - x0) . normal
    double d = 0.0;         // max over the closure of |x - x0|
    double m1 = 0.0;        // 3 / (2 rho0)
    double m2 = 0.0;        // 1 + d / rho0
    double area = 0.0;
    double perimeter = 0.0;
};

double shape_area(const ShapeSpec& shape);
double shape_perimeter(const ShapeSpec& shape);
Rect shape_bounding_box(const ShapeSpec& shape);
bool shape_contains(const ShapeSpec& shape, Vec2 p);
std::string shape_name(const ShapeSpec& shape);

// Builds the boundary quadrature (composite midpoint on arc length) and
// validates the shape and the reference point. Throws ConfigError with a
// distinct message for: degenerate shape, non-convex or clockwise polygon,
// and a reference point that is not strictly interior.
DomainGeometry make_domain(const ShapeSpec& shape, Vec2 x0, int boundary_resolution);

// Closed-form rho0 and d for disk/rectangle; per-edge line distances and
// vertex distances for polygons. Throws NumericalError if rho0 <= 0 (x0 is
// not a star center for this boundary).
GeometryConstants compute_geometry_constants(const DomainGeometry& domain);

// Sampled variants, used as cross-checks of the closed forms.
double sampled_rho0(const DomainGeometry& domain);
double sampled_d(const DomainGeometry& domain);

// Constants of an arbitrary axis-aligned rectangle (not necessarily centered
// at the origin) with reference point x0. Used for the grid rectangle that
// embeds non-rectangular shapes during simulation.
GeometryConstants compute_rect_constants(const Rect& rect, Vec2 x0);

} // namespace arclab
