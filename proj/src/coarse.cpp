#include "polyschwarz/coarse.hpp"

#include <cmath>
#include <string>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/tolerances.hpp"

namespace polyschwarz {

namespace {

// k-th derivative of the radial profile g(s) on [0, 1], psi(t) = g(|t|).
double profile_radial(int m, double s, int k) {
    // cubic: 1 - 3s^2 + 2s^3;  quintic: 1 - 10s^3 + 15s^4 - 6s^5
    static constexpr double cubic[] = {1, 0, -3, 2, 0, 0};
    static constexpr double quintic[] = {1, 0, 0, -10, 15, -6};
    const double* c = m == 2 ? cubic : quintic;
    double v = 0.0;
    for (int p = 5; p >= k; --p) {
        double f = c[p];
        for (int i = 0; i < k; ++i) f *= p - i;
        v = v * s + f;
    }
    return v;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

// k-th derivative of the polynomial factor q(t) (t the scaled coordinate):
// scaled: q = t^a; unscaled: q = (c + H t)^a.
double poly_factor(bool scaled, double c, double H, int a, double t, int k) {
    if (k > a) return 0.0;
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= a - i;
    const double base = scaled ? t : c + H * t;
    if (!scaled) f *= std::pow(H, k);
    return f * std::pow(base, a - k);
}

}  // namespace

double hermite_profile(int m, double t, int k) {
    if (m != 2 && m != 3) throw ConfigError("hermite_profile: m must be 2 or 3");
    const double s = std::abs(t);
    if (s > 1.0) return 0.0;
    const double sign = (t < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    return sign * profile_radial(m, s, k);
}

CoarseGenerator::CoarseGenerator(const CartesianMesh& coarse, int m, int vi, int vj)
    : m_(m), center_(coarse.vertex(vi, vj)), H_(coarse.cell_size()) {
    if (m != 2 && m != 3) {
        throw ConfigError("coarse generators are defined for m = 2, 3; got " + std::to_string(m));
    }
    const int n = coarse.cells_per_axis();
    if (vi < 0 || vi > n || vj < 0 || vj > n) throw ConfigError("coarse vertex out of range");
}

double CoarseGenerator::derivative(Point x, MultiIndex d) const {
    const double t1 = (x[0] - center_[0]) / H_;
    const double t2 = (x[1] - center_[1]) / H_;
    return std::pow(H_, -d.order()) * hermite_profile(m_, t1, d.a) * hermite_profile(m_, t2, d.b);
}

CoarseSpace::CoarseSpace(const CartesianMesh& coarse, int m, const DofMap& fine,
                         const CsrMatrix& a, const CoarseOptions& opts)
    : m_(m) {
    const int nc = coarse.cells_per_axis();
    const int nf = fine.mesh().cells_per_axis();
    if (m != order_of(fine.family())) {
        throw ConfigError("coarse space order m = " + std::to_string(m) +
                          " does not match the fine element");
    }
    if (nc < 2) throw ConfigError("coarse space needs an interior coarse vertex (1/H >= 2)");
    if (nf % nc != 0) throw ConfigError("fine mesh does not refine the coarse mesh");
    if (a.rows() != fine.free_count() || a.cols() != fine.free_count()) {
        throw DimensionError("coarse space: A does not match the fine dof map");
    }

    std::vector<MultiIndex> polys;
    for (int deg = 0; deg < m; ++deg) {
        for (int b = 0; b <= deg; ++b) polys.push_back({deg - b, b});
    }
    const int np = static_cast<int>(polys.size());
    for (int vj = 1; vj < nc; ++vj) {
        for (int vi = 1; vi < nc; ++vi) {
            for (const auto& p : polys) basis_.push_back({vi, vj, p});
        }
    }

    const double H = coarse.cell_size();
    const double half_h = 0.5 * fine.mesh().cell_size();
    const int r2 = 2 * nf / nc;  // half-cell lattice units per coarse cell
    const bool scaled = opts.scaled_monomials;

    // d^k/dx^k of psi(t) q(t) along one axis by the Leibniz rule, t = (x - c)/H.
    auto axis_factor = [&](double t, double c, int a, int k) {
        double s = 0.0;
        for (int g = 0; g <= k; ++g) {
            s += binomial(k, g) * hermite_profile(m, t, g) * poly_factor(scaled, c, H, a, t, k - g);
        }
        return std::pow(H, -k) * s;
    };

    linalg::TripletBuffer pt(fine.free_count(), dimension());
    for (Index g = 0; g < fine.free_count(); ++g) {
        const auto [hx, hy] = fine.anchor(g);
        const MultiIndex beta = fine.deriv(g);
        const double dof_scale = std::pow(half_h, beta.order());
        for (int vj = std::max(1, hy / r2); vj <= std::min(nc - 1, hy / r2 + 1); ++vj) {
            const int dy = hy - vj * r2;
            if (std::abs(dy) >= r2) continue;
            const double t2 = static_cast<double>(dy) / r2;
            for (int vi = std::max(1, hx / r2); vi <= std::min(nc - 1, hx / r2 + 1); ++vi) {
                const int dx = hx - vi * r2;
                if (std::abs(dx) >= r2) continue;
                const double t1 = static_cast<double>(dx) / r2;
                const Point c = coarse.vertex(vi, vj);
                const Index col0 = (static_cast<Index>(vj - 1) * (nc - 1) + (vi - 1)) * np;
                for (int q = 0; q < np; ++q) {
                    const double v = dof_scale * axis_factor(t1, c[0], polys[q].a, beta.a) *
                                     axis_factor(t2, c[1], polys[q].b, beta.b);
                    if (v != 0.0) pt.add(g, col0 + q, v);
                }
            }
        }
    }
    prolongation_ = pt.compact();
    restriction_ = prolongation_.transpose();
    coarse_matrix_ = linalg::triple_product(restriction_, a);
    try {
        factor_ = linalg::SpdFactorization(coarse_matrix_, {.min_pivot_ratio = tol::coarse_pivot_ratio});
    } catch (const NotSpdError& e) {
        throw NotSpdError("coarse matrix A_0 is rank deficient (dependent coarse basis): " +
                              std::string(e.what()),
                          e.pivot());
    }
}

void CoarseSpace::apply_add(std::span<const double> r, std::span<double> z) const {
    const std::vector<double> rc = restriction_.multiply(r);
    const std::vector<double> yc = factor_.solve(rc);
    auto cols = prolongation_.col_idx();
    auto vals = prolongation_.values();
    auto ptr = prolongation_.row_ptr();
    for (Index i = 0; i < prolongation_.rows(); ++i) {
        double s = 0.0;
        for (Index p = ptr[i]; p < ptr[i + 1]; ++p) s += vals[p] * yc[cols[p]];
        z[i] += s;
    }
}

}  // namespace polyschwarz
