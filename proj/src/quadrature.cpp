#include "polyschwarz/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "polyschwarz/errors.hpp"

namespace polyschwarz {

GaussRule1D GaussRule1D::make(int q) {
    if (q < 1) throw ConfigError("Gauss rule needs at least one point");
    GaussRule1D rule;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    // Newton iteration on P_q from the Chebyshev-like initial guess; nodes
    // are symmetric so only half are computed.
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= q; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = q * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[q - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[q - 1 - i] = w;
    }
    if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
    return rule;
}

QuadratureRule QuadratureRule::tensor_gauss(int q) {
    const GaussRule1D g = GaussRule1D::make(q);
    QuadratureRule rule;
    rule.points_per_axis = q;
    rule.points.reserve(static_cast<std::size_t>(q) * q);
    rule.weights.reserve(static_cast<std::size_t>(q) * q);
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < q; ++i) {
            rule.points.push_back({g.nodes[i], g.nodes[j]});
            rule.weights.push_back(g.weights[i] * g.weights[j]);
        }
    }
    return rule;
}

}  // namespace polyschwarz
