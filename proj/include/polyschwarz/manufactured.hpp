#pragma once

#include "polyschwarz/elements.hpp"

namespace polyschwarz {

/// Exact solutions u(x, y) = x^m (1 - x)^m sin^m(pi y) of the clamped
/// problem (-Laplace)^m u = f on the unit square, for m = 2 and m = 3.
class ManufacturedSolution {
public:
    /// Throws ConfigError unless m is 2 or 3.
    explicit ManufacturedSolution(int m);

    int m() const noexcept { return m_; }
    /// D^(a,b) u at p.
    double derivative(Point p, MultiIndex d) const;
    double value(Point p) const { return derivative(p, {0, 0}); }
    /// f = (-Laplace)^m u.
    double rhs(Point p) const;

private:
    // d^k/dx^k of x^m (1 - x)^m.
    double poly_derivative(double x, int k) const;
    // d^k/dy^k of sin^m(pi y).
    double trig_derivative(double y, int k) const;

    int m_;
};

}  // namespace polyschwarz
