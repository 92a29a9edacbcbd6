#include "arclab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "arclab/errors.hpp"

namespace arclab {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_polygon(const PolygonSpec& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) throw ConfigError("degenerate shape: polygon needs at least 3 vertices");
    double area2 = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 <= 0.0) throw ConfigError("polygon vertices must be counter-clockwise");
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        const Vec2 c = v[(i + 2) % v.size()];
        const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
        if (cross <= 0.0) throw ConfigError("polygon is not strictly convex");
        if (norm(b - a) <= 0.0) throw ConfigError("degenerate shape: repeated polygon vertex");
    }
}

// Signed distance of x0 to each edge line, measured along the outward normal.
// Positive for interior points of a convex CCW polygon.
std::vector<double> edge_distances(const PolygonSpec& poly, Vec2 x0) {
    std::vector<double> dist;
    const auto& v = poly.vertices;
    dist.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        const Vec2 t = b - a;
        const double len = norm(t);
        const Vec2 n{t.y / len, -t.x / len}; // outward for CCW
        dist.push_back(dot(a - x0, n));
    }
    return dist;
}

std::vector<BoundarySample> sample_disk(const DiskSpec& disk, int n) {
    std::vector<BoundarySample> samples;
    samples.reserve(static_cast<size_t>(n));
    const double w = 2.0 * kPi * disk.radius / n;
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * kPi * (k + 0.5) / n;
        const Vec2 nrm{std::cos(theta), std::sin(theta)};
        samples.push_back({disk.radius * nrm, nrm, w});
    }
    return samples;
}

// Midpoint samples along one straight segment from a to b with outward normal n.
void sample_segment(std::vector<BoundarySample>& samples, Vec2 a, Vec2 b, Vec2 n, int count) {
    const double len = norm(b - a);
    const double w = len / count;
    for (int k = 0; k < count; ++k) {
        const double s = (k + 0.5) / count;
        samples.push_back({a + s * (b - a), n, w});
    }
}

std::vector<BoundarySample> sample_rectangle(const RectangleSpec& rect, int n) {
    const double a = rect.half_width, b = rect.half_height;
    const double per = 4.0 * (a + b);
    const int nx = std::max(1, static_cast<int>(std::lround(n * 2.0 * a / per)));
    const int ny = std::max(1, static_cast<int>(std::lround(n * 2.0 * b / per)));
    std::vector<BoundarySample> samples;
    sample_segment(samples, {-a, -b}, {a, -b}, {0.0, -1.0}, nx);
    sample_segment(samples, {a, -b}, {a, b}, {1.0, 0.0}, ny);
    sample_segment(samples, {a, b}, {-a, b}, {0.0, 1.0}, nx);
    sample_segment(samples, {-a, b}, {-a, -b}, {-1.0, 0.0}, ny);
    return samples;
}

std::vector<BoundarySample> sample_polygon(const PolygonSpec& poly, int n) {
    const double per = shape_perimeter(ShapeSpec{poly});
    std::vector<BoundarySample> samples;
    const auto& v = poly.vertices;
    for (size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % v.size()];
        const Vec2 t = b - a;
        const double len = norm(t);
        const Vec2 nrm{t.y / len, -t.x / len};
        const int count = std::max(1, static_cast<int>(std::lround(n * len / per)));
        sample_segment(samples, a, b, nrm, count);
    }
    return samples;
}

} // namespace

double shape_area(const ShapeSpec& shape) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                return kPi * s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                return 4.0 * s.half_width * s.half_height;
            } else {
                double area2 = 0.0;
                const auto& v = s.vertices;
                for (size_t i = 0; i < v.size(); ++i) {
                    const Vec2 a = v[i];
                    const Vec2 b = v[(i + 1) % v.size()];
                    area2 += a.x * b.y - b.x * a.y;
                }
                return 0.5 * area2;
            }
        },
        shape);
}

double shape_perimeter(const ShapeSpec& shape) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                return 2.0 * kPi * s.radius;
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                return 4.0 * (s.half_width + s.half_height);
            } else {
                double per = 0.0;
                const auto& v = s.vertices;
                for (size_t i = 0; i < v.size(); ++i) per += norm(v[(i + 1) % v.size()] - v[i]);
                return per;
            }
        },
        shape);
}

Rect shape_bounding_box(const ShapeSpec& shape) {
    return std::visit(
        [](const auto& s) -> Rect {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                return {-s.radius, -s.radius, s.radius, s.radius};
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                return {-s.half_width, -s.half_height, s.half_width, s.half_height};
            } else {
                Rect box{s.vertices[0].x, s.vertices[0].y, s.vertices[0].x, s.vertices[0].y};
                for (const Vec2& p : s.vertices) {
                    box.x_min = std::min(box.x_min, p.x);
                    box.y_min = std::min(box.y_min, p.y);
                    box.x_max = std::max(box.x_max, p.x);
                    box.y_max = std::max(box.y_max, p.y);
                }
                return box;
            }
        },
        shape);
}

bool shape_contains(const ShapeSpec& shape, Vec2 p) {
    return std::visit(
        [p](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                return norm(p) < s.radius;
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                return std::abs(p.x) < s.half_width && std::abs(p.y) < s.half_height;
            } else {
                const auto dist = edge_distances(s, p);
                return std::all_of(dist.begin(), dist.end(), [](double d) { return d > 0.0; });
            }
        },
        shape);
}

std::string shape_name(const ShapeSpec& shape) {
    if (std::holds_alternative<DiskSpec>(shape)) return "disk";
    if (std::holds_alternative<RectangleSpec>(shape)) return "rectangle";
    return "polygon";
}

DomainGeometry make_domain(const ShapeSpec& shape, Vec2 x0, int boundary_resolution) {
    if (boundary_resolution < 4) throw ConfigError("boundary_resolution must be at least 4");
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                if (s.radius <= 0.0) throw ConfigError("degenerate shape: disk radius must be positive");
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                if (s.half_width <= 0.0 || s.half_height <= 0.0)
                    throw ConfigError("degenerate shape: rectangle half-widths must be positive");
            } else {
                validate_polygon(s);
            }
        },
        shape);
    if (!shape_contains(shape, x0))
        throw ConfigError("reference point x0 is not strictly interior to the domain");

    DomainGeometry domain{shape, x0, {}};
    domain.boundary_samples = std::visit(
        [boundary_resolution](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                return sample_disk(s, boundary_resolution);
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                return sample_rectangle(s, boundary_resolution);
            } else {
                return sample_polygon(s, boundary_resolution);
            }
        },
        shape);
    return domain;
}

GeometryConstants compute_geometry_constants(const DomainGeometry& domain) {
    GeometryConstants gc;
    gc.area = shape_area(domain.shape);
    gc.perimeter = shape_perimeter(domain.shape);
    const Vec2 x0 = domain.x0;

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DiskSpec>) {
                // On the circle the normal is x / R, so (x - x0) . normal
                // = R - x0 . normal; extremes along the direction of x0.
                const double off = norm(x0);
                gc.rho0 = s.radius - off;
                gc.d = s.radius + off;
            } else if constexpr (std::is_same_v<T, RectangleSpec>) {
                gc.rho0 = std::min(s.half_width - std::abs(x0.x), s.half_height - std::abs(x0.y));
                double dmax = 0.0;
                for (double sx : {-1.0, 1.0})
                    for (double sy : {-1.0, 1.0})
                        dmax = std::max(dmax, norm(Vec2{sx * s.half_width, sy * s.half_height} - x0));
                gc.d = dmax;
            } else {
                const auto dist = edge_distances(s, x0);
                gc.rho0 = *std::min_element(dist.begin(), dist.end());
                double dmax = 0.0;
                for (const Vec2& vtx : s.vertices) dmax = std::max(dmax, norm(vtx - x0));
                gc.d = dmax;
            }
        },
        domain.shape);

    if (gc.rho0 <= 0.0)
        throw NumericalError("rho0 <= 0: reference point is not a star center for this boundary");
    gc.m1 = 3.0 / (2.0 * gc.rho0);
    gc.m2 = 1.0 + gc.d / gc.rho0;
    return gc;
}

double sampled_rho0(const DomainGeometry& domain) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& s : domain.boundary_samples) r = std::min(r, dot(s.point - domain.x0, s.normal));
    return r;
}

double sampled_d(const DomainGeometry& domain) {
    double d = 0.0;
    for (const auto& s : domain.boundary_samples) d = std::max(d, norm(s.point - domain.x0));
    return d;
}

GeometryConstants compute_rect_constants(const Rect& rect, Vec2 x0) {
    if (!rect.contains(x0))
        throw ConfigError("reference point x0 is not strictly interior to the rectangle");
    GeometryConstants gc;
    gc.area = rect.area();
    gc.perimeter = rect.perimeter();
    gc.rho0 = std::min(std::min(x0.x - rect.x_min, rect.x_max - x0.x),
                       std::min(x0.y - rect.y_min, rect.y_max - x0.y));
    double dmax = 0.0;
    for (double cx : {rect.x_min, rect.x_max})
        for (double cy : {rect.y_min, rect.y_max}) dmax = std::max(dmax, norm(Vec2{cx, cy} - x0));
    gc.d = dmax;
    gc.m1 = 3.0 / (2.0 * gc.rho0);
    gc.m2 = 1.0 + gc.d / gc.rho0;
    return gc;
}

} // namespace arclab
