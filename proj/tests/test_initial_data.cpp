#include <doctest.h>

#include <cmath>
#include <numbers>

#include "arclab/errors.hpp"
#include "arclab/field_ops.hpp"
#include "arclab/initial_data.hpp"

using namespace arclab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant initial data has the obvious mass") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 32, 32);
    const ScalarField u0 = make_initial_data(ConstantIC{1.0}, g);
    CHECK(integrate(u0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("gaussian data is rescaled to the requested mass exactly") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 64, 64);
    const ScalarField u0 = make_initial_data(GaussianIC{{0.2, -0.1}, 0.3, 10.0}, g);
    CHECK(integrate(u0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(min_value(u0) >= 0.0);
}

TEST_CASE("annulus data is nonnegative with exact mass") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 64, 64);
    const ScalarField u0 = make_initial_data(AnnulusIC{{0.0, 0.0}, 0.5, 0.1, 3.0}, g);
    CHECK(integrate(u0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(min_value(u0) >= 0.0);
}

TEST_CASE("initial data guards: resolution, center, positivity") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 64, 64);
    CHECK_THROWS_WITH_AS(make_initial_data(GaussianIC{{0.0, 0.0}, 1e-6, 1.0}, g),
                         doctest::Contains("under-resolved"), ConfigError);
    CHECK_THROWS_WITH_AS(make_initial_data(GaussianIC{{5.0, 0.0}, 0.3, 1.0}, g),
                         doctest::Contains("outside the domain"), ConfigError);
    CHECK_THROWS_AS(make_initial_data(GaussianIC{{0.0, 0.0}, 0.3, -1.0}, g), ConfigError);
    CHECK_THROWS_AS(make_initial_data(ConstantIC{-0.5}, g), ConfigError);
}

TEST_CASE("mass classification against 4 pi / sigma") {
    const Grid g({-1.0, -1.0, 1.0, 1.0}, 32, 32);

    // chi = alpha = 1, xi = gamma = 0.5: sigma = 0.75, critical = 16 pi / 3.
    ModelParams p;
    p.xi = 0.5;
    p.gamma = 0.5;
    const MassClassification c = classify_mass(p, make_initial_data(ConstantIC{1.0}, g));
    CHECK(c.sigma == doctest::Approx(0.75).epsilon(1e-14));
    REQUIRE(c.critical_mass.has_value());
    CHECK(*c.critical_mass == doctest::Approx(16.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(c.regime == MassRegime::subcritical);
    CHECK_FALSE(c.marginal);

    // Exactly critical mass: supercritical with the marginal flag.
    ModelParams q; // sigma = chi alpha - xi gamma ... needs to be 1 - something
    q.xi = 0.5;
    q.gamma = 0.5;
    const double crit = 4.0 * kPi / q.sigma();
    const MassClassification m =
        classify_mass(q, make_initial_data(ConstantIC{crit / 4.0}, g));
    CHECK(m.regime == MassRegime::supercritical);
    CHECK(m.marginal);

    // Repulsion prevails regardless of mass.
    ModelParams r;
    r.xi = 3.0;
    const MassClassification rd = classify_mass(r, make_initial_data(ConstantIC{100.0}, g));
    CHECK(rd.regime == MassRegime::repulsion_dominant);
    CHECK_FALSE(rd.critical_mass.has_value());
}
