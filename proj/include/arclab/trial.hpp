#pragma once

#include <string>
#include <variant>
#include <vector>

#include "arclab/grid.hpp"
#include "arclab/rng.hpp"
#include "arclab/vec2.hpp"

namespace arclab {

// Nonnegative C^1 trial functions for the inequality bench. All of them can
// be re-evaluated on any grid over the same rectangle, which is what the
// grid-refinement confirmation of suspected violations relies on.

// V = p(x, y)^2 where p is a cosine polynomial adapted to the rectangle, so
// V is nonnegative and has zero normal derivative on every wall.
struct TrigPolyTrial {
    struct Term {
        int k = 0, l = 0;
        double coef = 0.0;
    };
    std::vector<Term> terms;
    Rect extent;
};

// Isotropic bump; sampling keeps the center at least 2.5 widths away from
// every wall so the inequality margins dominate the wall-kink error of the
// reflected gradient.
struct GaussianTrial {
    Vec2 center;
    double width = 0.1;
    double amplitude = 1.0;
};

struct ConstantTrial {
    double value = 1.0;
};

struct TrialFunction {
    std::variant<ConstantTrial, TrigPolyTrial, GaussianTrial> kind;
    std::string description;

    ScalarField evaluate(const Grid& grid) const;
    const char* family() const;
};

// Deterministic: the trial depends only on (seed, index, extent). Index 0 is
// always the unit constant; families then cycle constant, squared trig
// polynomial, gaussian.
TrialFunction sample_trial(uint64_t seed, uint64_t index, const Rect& extent);

} // namespace arclab
