#include "polyschwarz/manufactured.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(t + k pi/2) and sin(t + k pi/2) without rounding the phase shift.
double cos_shift(double t, int k) {
    switch (k % 4) {
        case 0: return std::cos(t);
        case 1: return -std::sin(t);
        case 2: return -std::cos(t);
        default: return std::sin(t);
    }
}

double sin_shift(double t, int k) {
    switch (k % 4) {
        case 0: return std::sin(t);
        case 1: return std::cos(t);
        case 2: return -std::sin(t);
        default: return -std::cos(t);
    }
}

}  // namespace

ManufacturedSolution::ManufacturedSolution(int m) : m_(m) {
    if (m != 2 && m != 3) {
        throw ConfigError("manufactured solutions exist for m = 2 and m = 3, got " +
                          std::to_string(m));
    }
}

double ManufacturedSolution::poly_derivative(double x, int k) const {
    // x^2 (1-x)^2 = x^2 - 2x^3 + x^4;  x^3 (1-x)^3 = x^3 - 3x^4 + 3x^5 - x^6.
    static constexpr std::array<double, 7> c2{0, 0, 1, -2, 1, 0, 0};
    static constexpr std::array<double, 7> c3{0, 0, 0, 1, -3, 3, -1};
    const auto& c = m_ == 2 ? c2 : c3;
    double s = 0.0;  // Horner in x over the differentiated coefficients
    for (int p = 6; p >= k; --p) {
        double f = c[p];
        for (int i = 0; i < k; ++i) f *= p - i;
        s = s * x + f;
    }
    return s;
}

double ManufacturedSolution::trig_derivative(double y, int k) const {
    if (m_ == 2) {
        // sin^2(pi y) = (1 - cos(2 pi y)) / 2
        const double w = 2.0 * kPi;
        const double d = -0.5 * std::pow(w, k) * cos_shift(w * y, k);
        return k == 0 ? 0.5 + d : d;
    }
    // sin^3(pi y) = (3 sin(pi y) - sin(3 pi y)) / 4
    return 0.25 * (3.0 * std::pow(kPi, k) * sin_shift(kPi * y, k) -
                   std::pow(3.0 * kPi, k) * sin_shift(3.0 * kPi * y, k));
}

double ManufacturedSolution::derivative(Point p, MultiIndex d) const {
    return poly_derivative(p[0], d.a) * trig_derivative(p[1], d.b);
}

double ManufacturedSolution::rhs(Point p) const {
    auto dx = [&](int k) { return poly_derivative(p[0], k); };
    auto dy = [&](int k) { return trig_derivative(p[1], k); };
    if (m_ == 2) return dx(4) * dy(0) + 2.0 * dx(2) * dy(2) + dx(0) * dy(4);
    return -(dx(6) * dy(0) + 3.0 * dx(4) * dy(2) + 3.0 * dx(2) * dy(4) + dx(0) * dy(6));
}

}  // namespace polyschwarz
