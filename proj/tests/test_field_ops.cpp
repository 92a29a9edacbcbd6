#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "arclab/field_ops.hpp"
#include "arclab/rng.hpp"

using namespace arclab;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField random_field(const Grid& g, uint64_t seed) {
    Rng rng(seed);
    ScalarField f(g);
    for (double& v : f.values) v = rng.uniform(-1.0, 1.0);
    return f;
}
} // namespace

TEST_CASE("integrate: constants and the cosine cancellation") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 32, 48);
    CHECK(integrate(ScalarField::constant(g, 1.0)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(integrate(ScalarField::constant(g, 0.0)) == 0.0);

    const Grid unit({0.0, 0.0, 1.0, 1.0}, 128, 128);
    const ScalarField f = ScalarField::from_function(
        unit, [](double x, double) { return 1.0 + std::cos(kPi * x); });
    CHECK(integrate(f) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gradient of a constant vanishes") {
    const Grid g({0.0, 0.0, 2.0, 1.0}, 16, 8);
    const VectorField grad = gradient(ScalarField::constant(g, 3.14));
    for (double v : grad.x) CHECK(v == 0.0);
    for (double v : grad.y) CHECK(v == 0.0);
}

TEST_CASE("laplacian integrates to zero and has the cosine eigenfunction") {
    const Grid g({0.0, 0.0, 1.0, 1.0}, 64, 64);
    const ScalarField f = random_field(g, 77);
    CHECK(std::abs(integrate(laplacian_neumann(f))) < 1e-10);

    // cos(pi x) matches the even reflection exactly, so it is a discrete
    // eigenfunction with eigenvalue -(2 - 2 cos(pi h)) / h^2.
    const ScalarField c =
        ScalarField::from_function(g, [](double x, double) { return std::cos(kPi * x); });
    const ScalarField lap = laplacian_neumann(c);
    const double lambda_h = (2.0 - 2.0 * std::cos(kPi * g.hx)) / (g.hx * g.hx);
    double max_eig_err = 0.0, max_pde_err = 0.0;
    for (size_t k = 0; k < c.values.size(); ++k) {
        max_eig_err = std::max(max_eig_err, std::abs(lap.values[k] + lambda_h * c.values[k]));
        max_pde_err = std::max(max_pde_err, std::abs(lap.values[k] + kPi * kPi * c.values[k]));
    }
    CHECK(max_eig_err < 1e-9);
    CHECK(max_pde_err < 1.1 * std::pow(kPi, 4) * g.hx * g.hx / 12.0);
}

TEST_CASE("divergence is the exact negative adjoint of gradient") {
    const Grid g({-0.5, 0.0, 1.5, 1.0}, 24, 20);
    const ScalarField f = random_field(g, 11);
    VectorField G(g);
    {
        const ScalarField a = random_field(g, 12), b = random_field(g, 13);
        G.x = a.values;
        G.y = b.values;
    }
    const ScalarField divG = divergence(G);
    const VectorField gradf = gradient(f);
    double lhs = 0.0, rhs = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k) {
        lhs += f.values[k] * divG.values[k];
        rhs -= gradf.x[k] * G.x[k] + gradf.y[k] * G.y[k];
    }
    lhs *= g.cell_area();
    rhs *= g.cell_area();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    // And the total divergence telescopes to zero.
    CHECK(std::abs(integrate(divG)) < 1e-12);
}

TEST_CASE("integrate_boundary: perimeter and an edge-by-edge oracle") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 32, 32);
    CHECK(integrate_boundary(ScalarField::constant(g, 1.0)) ==
          doctest::Approx(8.0).epsilon(1e-10));
    CHECK(integrate_boundary(ScalarField::constant(g, 0.0)) == 0.0);

    // x1^2 on the unit square: edges give 1/3 (bottom) + 1/3 (top) + 0 (left)
    // + 1 (right) = 5/3.
    const Grid unit({0.0, 0.0, 1.0, 1.0}, 128, 128);
    const ScalarField f =
        ScalarField::from_function(unit, [](double x, double) { return x * x; });
    CHECK(std::abs(integrate_boundary(f) - 5.0 / 3.0) < 3.0 * unit.hx * unit.hx);
}

TEST_CASE("clipped powers ignore negative round-off") {
    const Grid g({0.0, 0.0, 1.0, 1.0}, 8, 8);
    ScalarField f = ScalarField::constant(g, 2.0);
    f.values[3] = -1e-13; // tiny negative cell must not poison u^(3/2)
    const double v = integrate_pow_clipped(f, 1.5);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx((63.0 / 64.0) * std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("field CSV export carries grid metadata and one row per cell") {
    const Grid g({0.0, 0.0, 1.0, 1.0}, 4, 4);
    const ScalarField f = ScalarField::constant(g, 1.5);
    std::ostringstream out;
    write_field_csv(out, f);
    const std::string text = out.str();
    CHECK(text.find("# nx=4 ny=4") != std::string::npos);
    CHECK(text.find("x1,x2,value") != std::string::npos);
    size_t rows = 0;
    for (char c : text)
        if (c == '\n') ++rows;
    CHECK(rows == 2 + 16);
}
