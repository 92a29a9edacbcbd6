#pragma once

namespace arclab {

// The six positive model coefficients. chi and xi are the attraction and
// repulsion sensitivities, alpha and gamma the production rates of the two
// chemical concentrations, beta and delta their decay rates.
struct ModelParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
    double chi = 1.0;
    double xi = 1.0;

    // Net attraction strength; positive means attraction prevails.
    double sigma() const { return chi * alpha - xi * gamma; }

    // Throws ConfigError unless all six coefficients are strictly positive.
    void validate() const;
};

} // namespace arclab
