#include "arclab/field_ops.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "arclab/errors.hpp"

namespace arclab {

Grid::Grid(Rect extent_, int nx_, int ny_) : nx(nx_), ny(ny_), extent(extent_) {
    if (nx < 4 || ny < 4) throw ConfigError("grid needs nx, ny >= 4");
    if (extent.width() <= 0.0 || extent.height() <= 0.0)
        throw ConfigError("grid extent must have positive side lengths");
    hx = extent.width() / nx;
    hy = extent.height() / ny;
}

bool Grid::same_as(const Grid& other) const {
    return nx == other.nx && ny == other.ny && extent.x_min == other.extent.x_min &&
           extent.y_min == other.extent.y_min && extent.x_max == other.extent.x_max &&
           extent.y_max == other.extent.y_max;
}

ScalarField ScalarField::from_function(const Grid& g,
                                       const std::function<double(double, double)>& f) {
    ScalarField out(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.at(i, j) = f(g.cx(i), g.cy(j));
    return out;
}

void ScalarField::check_finite(const char* label) const {
    for (double v : values)
        if (!std::isfinite(v)) throw NumericalError(std::string("non-finite value in field ") + label);
}

double integrate(const ScalarField& f) {
    double sum = 0.0;
    for (double v : f.values) sum += v;
    return sum * f.grid.cell_area();
}

double integrate_product(const ScalarField& f, const ScalarField& g) {
    double sum = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k) sum += f.values[k] * g.values[k];
    return sum * f.grid.cell_area();
}

double integrate_pow_clipped(const ScalarField& f, double p) {
    double sum = 0.0;
    for (double v : f.values) sum += v > 0.0 ? std::pow(v, p) : 0.0;
    return sum * f.grid.cell_area();
}

double integrate_sq_product(const ScalarField& f, const ScalarField& g) {
    double sum = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k) sum += f.values[k] * f.values[k] * g.values[k];
    return sum * f.grid.cell_area();
}

namespace {

// Even-reflection neighbor lookup: index -1 maps to 0, n to n - 1.
inline int reflect(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

} // namespace

VectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid;
    VectorField out(g);
    const double ix = 1.0 / (2.0 * g.hx), iy = 1.0 / (2.0 * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double fxp = f.at(reflect(i + 1, g.nx), j);
            const double fxm = f.at(reflect(i - 1, g.nx), j);
            const double fyp = f.at(i, reflect(j + 1, g.ny));
            const double fym = f.at(i, reflect(j - 1, g.ny));
            out.x[static_cast<size_t>(g.idx(i, j))] = (fxp - fxm) * ix;
            out.y[static_cast<size_t>(g.idx(i, j))] = (fyp - fym) * iy;
        }
    }
    return out;
}

ScalarField divergence(const VectorField& v) {
    const Grid& g = v.grid;
    ScalarField out(g);
    const double ix = 1.0 / (2.0 * g.hx), iy = 1.0 / (2.0 * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            // Odd reflection of the normal component at the walls.
            const double gxp = i + 1 >= g.nx ? -v.x[static_cast<size_t>(g.idx(i, j))]
                                             : v.x[static_cast<size_t>(g.idx(i + 1, j))];
            const double gxm = i - 1 < 0 ? -v.x[static_cast<size_t>(g.idx(i, j))]
                                         : v.x[static_cast<size_t>(g.idx(i - 1, j))];
            const double gyp = j + 1 >= g.ny ? -v.y[static_cast<size_t>(g.idx(i, j))]
                                             : v.y[static_cast<size_t>(g.idx(i, j + 1))];
            const double gym = j - 1 < 0 ? -v.y[static_cast<size_t>(g.idx(i, j))]
                                         : v.y[static_cast<size_t>(g.idx(i, j - 1))];
            out.at(i, j) = (gxp - gxm) * ix + (gyp - gym) * iy;
        }
    }
    return out;
}

ScalarField laplacian_neumann(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double ixx = 1.0 / (g.hx * g.hx), iyy = 1.0 / (g.hy * g.hy);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double c = f.at(i, j);
            const double fxp = f.at(reflect(i + 1, g.nx), j);
            const double fxm = f.at(reflect(i - 1, g.nx), j);
            const double fyp = f.at(i, reflect(j + 1, g.ny));
            const double fym = f.at(i, reflect(j - 1, g.ny));
            out.at(i, j) = (fxp - 2.0 * c + fxm) * ixx + (fyp - 2.0 * c + fym) * iyy;
        }
    }
    return out;
}

double integrate_grad_sq(const ScalarField& f) {
    const VectorField g = gradient(f);
    double sum = 0.0;
    for (size_t k = 0; k < g.x.size(); ++k) sum += g.x[k] * g.x[k] + g.y[k] * g.y[k];
    return sum * f.grid.cell_area();
}

double integrate_boundary(const ScalarField& f) {
    const Grid& g = f.grid;
    // Value at a wall face from the two nearest cells: (3 f0 - f1) / 2.
    auto face = [](double f0, double f1) { return 0.5 * (3.0 * f0 - f1); };
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        sum += face(f.at(0, j), f.at(1, j)) * g.hy;
        sum += face(f.at(g.nx - 1, j), f.at(g.nx - 2, j)) * g.hy;
    }
    for (int i = 0; i < g.nx; ++i) {
        sum += face(f.at(i, 0), f.at(i, 1)) * g.hx;
        sum += face(f.at(i, g.ny - 1), f.at(i, g.ny - 2)) * g.hx;
    }
    return sum;
}

double min_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

double max_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::max(m, v);
    return m;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double vec_norm(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
    const Grid& g = f.grid;
    char line[160];
    std::snprintf(line, sizeof line,
                  "# nx=%d ny=%d hx=%.17g hy=%.17g x_min=%.17g y_min=%.17g\n", g.nx, g.ny,
                  g.hx, g.hy, g.extent.x_min, g.extent.y_min);
    out << line << "x1,x2,value\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g\n", g.cx(i), g.cy(j), f.at(i, j));
            out << line;
        }
    }
}

} // namespace arclab
