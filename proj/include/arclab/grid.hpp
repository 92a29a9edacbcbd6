#pragma once

#include <functional>
#include <vector>

#include "arclab/vec2.hpp"

namespace arclab {

// Cell-centered structured grid on a rectangle. Cell (i, j) has its center
// at (x_min + (i + 1/2) hx, y_min + (j + 1/2) hy); values are stored row
// major with i fastest.
struct Grid {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    Rect extent;

    Grid() = default;
    Grid(Rect extent_, int nx_, int ny_);

    int cell_count() const { return nx * ny; }
    int idx(int i, int j) const { return j * nx + i; }
    double cx(int i) const { return extent.x_min + (i + 0.5) * hx; }
    double cy(int j) const { return extent.y_min + (j + 0.5) * hy; }
    Vec2 center(int i, int j) const { return {cx(i), cy(j)}; }
    double cell_area() const { return hx * hy; }

    bool same_as(const Grid& other) const;
};

struct ScalarField {
    Grid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.cell_count()), fill) {}

    double& at(int i, int j) { return values[static_cast<size_t>(grid.idx(i, j))]; }
    double at(int i, int j) const { return values[static_cast<size_t>(grid.idx(i, j))]; }

    static ScalarField constant(const Grid& g, double c) { return ScalarField(g, c); }
    static ScalarField from_function(const Grid& g, const std::function<double(double, double)>& f);

    // Throws NumericalError if any value is not finite.
    void check_finite(const char* label) const;
};

struct VectorField {
    Grid grid;
    std::vector<double> x; // first component per cell
    std::vector<double> y; // second component per cell

    VectorField() = default;
    explicit VectorField(const Grid& g)
        : grid(g),
          x(static_cast<size_t>(g.cell_count()), 0.0),
          y(static_cast<size_t>(g.cell_count()), 0.0) {}
};

} // namespace arclab
