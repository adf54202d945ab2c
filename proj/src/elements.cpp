#include "polyschwarz/elements.hpp"

#include <cmath>
#include <string>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/tolerances.hpp"

namespace polyschwarz {

namespace {

// d^k/dx^k x^p evaluated at x, with 0^0 = 1.
double monomial_derivative_1d(int p, int k, double x) {
    if (k > p) return 0.0;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c *= p - i;
    double v = 1.0;
    for (int i = 0; i < p - k; ++i) v *= x;
    return c * v;
}

constexpr std::array<std::array<int, 2>, 4> kCorners{{{0, 0}, {2, 0}, {0, 2}, {2, 2}}};

std::vector<DofFunctional> vertex_dofs(const std::vector<MultiIndex>& per_vertex) {
    std::vector<DofFunctional> dofs;
    for (const auto& c : kCorners) {
        for (const auto& d : per_vertex) {
            dofs.push_back({{c[0] - 1.0, c[1] - 1.0}, d, AnchorClass::vertex, c});
        }
    }
    return dofs;
}

std::vector<DofFunctional> lagrange_q2_dofs() {
    std::vector<DofFunctional> dofs;
    for (int b = 0; b < 3; ++b) {
        for (int a = 0; a < 3; ++a) {
            const int odd = (a == 1) + (b == 1);
            const AnchorClass cls = odd == 0   ? AnchorClass::vertex
                                    : odd == 1 ? AnchorClass::edge_midpoint
                                               : AnchorClass::cell_center;
            dofs.push_back({{a - 1.0, b - 1.0}, {0, 0}, cls, {a, b}});
        }
    }
    return dofs;
}

std::vector<MultiIndex> tensor_monomials(int degree) {
    std::vector<MultiIndex> out;
    for (int q = 0; q <= degree; ++q) {
        for (int p = 0; p <= degree; ++p) out.push_back({p, q});
    }
    return out;
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::bfs: return "bfs";
        case Family::adini: return "adini";
        case Family::c0ip: return "c0ip";
        case Family::jinwu: return "jinwu";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "bfs") return Family::bfs;
    if (name == "adini") return Family::adini;
    if (name == "c0ip") return Family::c0ip;
    if (name == "jinwu") return Family::jinwu;
    throw ConfigError("unknown element '" + std::string(name) +
                      "' (expected bfs, adini, c0ip or jinwu)");
}

int order_of(Family f) { return f == Family::jinwu ? 3 : 2; }

double apply_functional(const DofFunctional& dof, MultiIndex mono) {
    return monomial_derivative_1d(mono.a, dof.deriv.a, dof.anchor[0]) *
           monomial_derivative_1d(mono.b, dof.deriv.b, dof.anchor[1]);
}

std::vector<std::pair<MultiIndex, double>> energy_weights(int m) {
    std::vector<std::pair<MultiIndex, double>> w;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        w.push_back({{m - k, k}, binom});
        binom = binom * (m - k) / (k + 1);
    }
    return w;
}

int ReferenceElement::default_quadrature_points() const noexcept {
    return family_ == Family::jinwu ? 8 : 6;
}

ReferenceElement build_element(Family family) {
    std::vector<MultiIndex> monomials;
    std::vector<DofFunctional> dofs;
    switch (family) {
        case Family::bfs:
            monomials = tensor_monomials(3);
            dofs = vertex_dofs({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
            break;
        case Family::adini:
            for (int d = 0; d <= 3; ++d) {
                for (int q = 0; q <= d; ++q) monomials.push_back({d - q, q});
            }
            monomials.push_back({3, 1});
            monomials.push_back({1, 3});
            dofs = vertex_dofs({{0, 0}, {1, 0}, {0, 1}});
            break;
        case Family::c0ip:
            monomials = tensor_monomials(2);
            dofs = lagrange_q2_dofs();
            break;
        case Family::jinwu: {
            const MultiIndex q1[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
            const MultiIndex enrich[] = {{0, 0}, {2, 0}, {0, 2}, {4, 0}, {0, 4}};
            for (const auto& r : enrich) {
                for (const auto& s : q1) monomials.push_back({s.a + r.a, s.b + r.b});
            }
            dofs = vertex_dofs({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
            break;
        }
    }
    return make_element(family, std::move(monomials), std::move(dofs));
}

ReferenceElement make_element(Family family, std::vector<MultiIndex> monomials,
                              std::vector<DofFunctional> dofs) {
    ReferenceElement e;
    e.family_ = family;
    e.m_ = order_of(family);
    e.monomials_ = std::move(monomials);
    e.dofs_ = std::move(dofs);
    const int n = static_cast<int>(e.dofs_.size());
    if (static_cast<int>(e.monomials_.size()) != n) {
        throw Error("element " + std::string(to_string(family)) + ": " +
                    std::to_string(e.monomials_.size()) + " monomials for " +
                    std::to_string(n) + " functionals");
    }
    Eigen::MatrixXd v(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) v(i, j) = apply_functional(e.dofs_[i], e.monomials_[j]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
    const auto& sv = svd.singularValues();
    e.vandermonde_condition_ = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : INFINITY;
    if (!(e.vandermonde_condition_ <= tol::vandermonde_condition_max)) {
        throw Error("element " + std::string(to_string(family)) +
                    ": generalized Vandermonde matrix is singular or ill-conditioned (cond = " +
                    std::to_string(e.vandermonde_condition_) + ")");
    }
    e.coeffs_ = v.fullPivLu().inverse();
    return e;
}

ShapeTable ReferenceElement::eval(Point ref, int max_deriv) const {
    const int n = size();
    ShapeTable table(max_deriv, n);
    std::vector<double> mono(monomials_.size());
    for (int a = 0; a <= max_deriv; ++a) {
        for (int b = 0; a + b <= max_deriv; ++b) {
            for (std::size_t k = 0; k < monomials_.size(); ++k) {
                mono[k] = monomial_derivative_1d(monomials_[k].a, a, ref[0]) *
                          monomial_derivative_1d(monomials_[k].b, b, ref[1]);
            }
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < mono.size(); ++k) s += coeffs_(k, j) * mono[k];
                table({a, b}, j) = s;
            }
        }
    }
    return table;
}

Eigen::MatrixXd local_stiffness(const ReferenceElement& elem, double h,
                                const QuadratureRule& quad) {
    if (!(h > 0.0)) throw ConfigError("local_stiffness: cell size must be positive");
    const int n = elem.size();
    const int m = elem.m();
    const auto weights = energy_weights(m);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd d(n);
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const ShapeTable t = elem.eval(quad.points[q], m);
        for (const auto& [alpha, c] : weights) {
            for (int j = 0; j < n; ++j) d(j) = t(alpha, j);
            k.noalias() += (quad.weights[q] * c) * d * d.transpose();
        }
    }
    k *= std::pow(2.0 / h, 2 * m) * (0.25 * h * h);
    const double asym = (k - k.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol::algebraic_identity * k.cwiseAbs().maxCoeff()) {
        throw Error("local_stiffness: result not symmetric");
    }
    return 0.5 * (k + k.transpose());
}

Eigen::VectorXd local_load(const ReferenceElement& elem, Point origin, double h,
                           const ScalarField& f, const QuadratureRule& quad) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(elem.size());
    const double jac = 0.25 * h * h;
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double fq = f(to_physical(origin, h, quad.points[q]));
        if (fq == 0.0) continue;
        const ShapeTable t = elem.eval(quad.points[q], 0);
        for (int i = 0; i < elem.size(); ++i) b(i) += quad.weights[q] * jac * fq * t({0, 0}, i);
    }
    return b;
}

}  // namespace polyschwarz
