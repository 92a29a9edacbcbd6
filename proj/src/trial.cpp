#include "arclab/trial.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace arclab {

namespace {

constexpr double kPi = std::numbers::pi;

double eval_trig(const TrigPolyTrial& t, double x, double y) {
    const double lx = t.extent.width(), ly = t.extent.height();
    double p = 0.0;
    for (const auto& term : t.terms)
        p += term.coef * std::cos(term.k * kPi * (x - t.extent.x_min) / lx) *
             std::cos(term.l * kPi * (y - t.extent.y_min) / ly);
    return p * p;
}

} // namespace

ScalarField TrialFunction::evaluate(const Grid& grid) const {
    return std::visit(
        [&grid](const auto& t) -> ScalarField {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstantTrial>) {
                return ScalarField::constant(grid, t.value);
            } else if constexpr (std::is_same_v<T, TrigPolyTrial>) {
                return ScalarField::from_function(
                    grid, [&t](double x, double y) { return eval_trig(t, x, y); });
            } else {
                const double iw = 1.0 / (2.0 * t.width * t.width);
                return ScalarField::from_function(grid, [&t, iw](double x, double y) {
                    const double dx = x - t.center.x, dy = y - t.center.y;
                    return t.amplitude * std::exp(-(dx * dx + dy * dy) * iw);
                });
            }
        },
        kind);
}

const char* TrialFunction::family() const {
    if (std::holds_alternative<ConstantTrial>(kind)) return "constant";
    if (std::holds_alternative<TrigPolyTrial>(kind)) return "trig_poly";
    return "gaussian";
}

TrialFunction sample_trial(uint64_t seed, uint64_t index, const Rect& extent) {
    Rng rng(substream_seed(seed, index));
    TrialFunction trial;
    std::ostringstream desc;

    const int family = static_cast<int>(index % 3);
    if (family == 0) {
        const double value = index == 0 ? 1.0 : rng.uniform(0.1, 4.0);
        trial.kind = ConstantTrial{value};
        desc << "constant(value=" << value << ")";
    } else if (family == 1) {
        TrigPolyTrial t;
        t.extent = extent;
        const int degree = 1 + static_cast<int>(rng.below(6)); // up to 6
        // A constant offset plus a handful of modes keeps the square from
        // degenerating to near-zero everywhere.
        t.terms.push_back({0, 0, rng.uniform(0.2, 1.0)});
        const int n_modes = 2 + static_cast<int>(rng.below(5));
        for (int m = 0; m < n_modes; ++m) {
            TrigPolyTrial::Term term;
            term.k = static_cast<int>(rng.below(static_cast<uint64_t>(degree + 1)));
            term.l = static_cast<int>(rng.below(static_cast<uint64_t>(degree + 1)));
            term.coef = rng.uniform(-1.0, 1.0);
            t.terms.push_back(term);
        }
        desc << "trig_poly(degree<=" << degree << ",modes=" << t.terms.size() << ")";
        trial.kind = std::move(t);
    } else {
        const double lmin = std::min(extent.width(), extent.height());
        const double width = rng.uniform(0.05, 0.18) * lmin;
        // Keep the bump 2.5 widths clear of every wall.
        const double mx = 2.5 * width, my = 2.5 * width;
        GaussianTrial t;
        t.width = width;
        t.center.x = rng.uniform(extent.x_min + mx, extent.x_max - mx);
        t.center.y = rng.uniform(extent.y_min + my, extent.y_max - my);
        t.amplitude = rng.uniform(0.2, 5.0);
        desc << "gaussian(center=(" << t.center.x << ',' << t.center.y << "),width=" << width
             << ",amp=" << t.amplitude << ")";
        trial.kind = t;
    }
    trial.description = desc.str();
    return trial;
}

} // namespace arclab
