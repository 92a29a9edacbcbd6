#pragma once

#include <optional>
#include <variant>

#include "arclab/grid.hpp"
#include "arclab/params.hpp"
#include "arclab/vec2.hpp"

namespace arclab {

struct ConstantIC {
    double value = 1.0;
};

struct GaussianIC {
    Vec2 center;
    double width = 0.25;
    double mass = 1.0;
};

// Ring bump exp(-(r - radius)^2 / (2 width^2)) around center.
struct AnnulusIC {
    Vec2 center;
    double radius = 0.5;
    double width = 0.1;
    double mass = 1.0;
};

using InitialSpec = std::variant<ConstantIC, GaussianIC, AnnulusIC>;

// Nonnegative initial cell density. Gaussian and annulus data are rescaled
// so that the grid integral equals the requested mass exactly. Throws
// ConfigError for: nonpositive mass or width, a center outside the grid
// extent, or width below 2 max(hx, hy) (under-resolved data).
ScalarField make_initial_data(const InitialSpec& spec, const Grid& grid);

enum class MassRegime { subcritical, supercritical, repulsion_dominant };

struct MassClassification {
    MassRegime regime = MassRegime::subcritical;
    bool marginal = false; // |mass - critical| < 1e-9 * mass
    double sigma = 0.0;
    std::optional<double> critical_mass; // 4 pi / sigma when sigma > 0
    double mass = 0.0;
};

const char* regime_name(MassRegime regime);

// Compares the initial mass against 4 pi / sigma. sigma <= 0 is the
// repulsion-dominant regime where the critical mass is undefined.
MassClassification classify_mass(const ModelParams& params, const ScalarField& u0);

} // namespace arclab
