#include "arclab/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "arclab/errors.hpp"
#include "arclab/field_ops.hpp"

namespace arclab {

void ModelParams::validate() const {
    const double vals[] = {alpha, beta, gamma, delta, chi, xi};
    const char* names[] = {"alpha", "beta", "gamma", "delta", "chi", "xi"};
    for (int k = 0; k < 6; ++k)
        if (!(vals[k] > 0.0))
            throw ConfigError(std::string("model parameter ") + names[k] +
                              " must be strictly positive");
}

namespace {

void check_bump_args(const Grid& grid, Vec2 center, double width, double mass) {
    if (!(mass > 0.0)) throw ConfigError("initial data mass must be positive");
    if (!(width > 0.0)) throw ConfigError("initial data width must be positive");
    if (!grid.extent.contains(center))
        throw ConfigError("initial data center is outside the domain");
    const double h = std::max(grid.hx, grid.hy);
    if (width < 2.0 * h)
        throw ConfigError("under-resolved initial data (width < 2h)");
}

ScalarField rescale_to_mass(ScalarField f, double mass) {
    const double raw = integrate(f);
    if (!(raw > 0.0)) throw ConfigError("initial data vanishes on the grid");
    const double s = mass / raw;
    for (double& v : f.values) v *= s;
    return f;
}

} // namespace

ScalarField make_initial_data(const InitialSpec& spec, const Grid& grid) {
    return std::visit(
        [&grid](const auto& s) -> ScalarField {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantIC>) {
                if (s.value < 0.0) throw ConfigError("constant initial data must be nonnegative");
                return ScalarField::constant(grid, s.value);
            } else if constexpr (std::is_same_v<T, GaussianIC>) {
                check_bump_args(grid, s.center, s.width, s.mass);
                const double iw = 1.0 / (2.0 * s.width * s.width);
                ScalarField f = ScalarField::from_function(grid, [&](double x, double y) {
                    const double dx = x - s.center.x, dy = y - s.center.y;
                    return std::exp(-(dx * dx + dy * dy) * iw);
                });
                return rescale_to_mass(std::move(f), s.mass);
            } else {
                check_bump_args(grid, s.center, s.width, s.mass);
                if (!(s.radius > 0.0)) throw ConfigError("annulus radius must be positive");
                const double iw = 1.0 / (2.0 * s.width * s.width);
                ScalarField f = ScalarField::from_function(grid, [&](double x, double y) {
                    const double r = std::hypot(x - s.center.x, y - s.center.y);
                    const double dr = r - s.radius;
                    return std::exp(-dr * dr * iw);
                });
                return rescale_to_mass(std::move(f), s.mass);
            }
        },
        spec);
}

const char* regime_name(MassRegime regime) {
    switch (regime) {
        case MassRegime::subcritical: return "subcritical";
        case MassRegime::supercritical: return "supercritical";
        case MassRegime::repulsion_dominant: return "repulsion_dominant";
    }
    return "unknown";
}

MassClassification classify_mass(const ModelParams& params, const ScalarField& u0) {
    params.validate();
    MassClassification c;
    c.sigma = params.sigma();
    c.mass = integrate(u0);
    if (c.sigma <= 0.0) {
        c.regime = MassRegime::repulsion_dominant;
        return c;
    }
    const double critical = 4.0 * std::numbers::pi / c.sigma;
    c.critical_mass = critical;
    c.marginal = std::abs(c.mass - critical) < 1e-9 * c.mass;
    c.regime = c.mass >= critical ? MassRegime::supercritical : MassRegime::subcritical;
    return c;
}

} // namespace arclab
