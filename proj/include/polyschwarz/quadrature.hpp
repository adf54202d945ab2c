#pragma once

#include <vector>

#include "polyschwarz/geometry.hpp"

namespace polyschwarz {

/// q-point Gauss–Legendre rule on [-1, 1].
struct GaussRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;

    static GaussRule1D make(int q);
};

/// Tensor Gauss–Legendre rule on [-1, 1]^2, exact for polynomials of degree
/// 2q - 1 in each variable.
struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;
    int points_per_axis = 0;

    static QuadratureRule tensor_gauss(int q);
    std::size_t size() const noexcept { return points.size(); }
};

}  // namespace polyschwarz
