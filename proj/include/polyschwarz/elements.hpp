#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polyschwarz/geometry.hpp"
#include "polyschwarz/quadrature.hpp"

namespace polyschwarz {

enum class Family { bfs, adini, c0ip, jinwu };

std::string_view to_string(Family f);
/// Accepts "bfs", "adini", "c0ip", "jinwu"; throws ConfigError otherwise.
Family parse_family(std::string_view name);
/// Order parameter m of the 2m-th order problem the family discretizes.
int order_of(Family f);

/// Partial derivative d^a/dx^a d^b/dy^b.
struct MultiIndex {
    int a = 0;
    int b = 0;
    int order() const noexcept { return a + b; }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

enum class AnchorClass { vertex, edge_midpoint, cell_center };

/// Point evaluation of a derivative of the (reference) shape function.
/// `node` is the anchor position on the 3 x 3 lattice {-1, 0, 1}^2 shifted to
/// {0, 1, 2}^2.
struct DofFunctional {
    Point anchor;
    MultiIndex deriv;
    AnchorClass anchor_class;
    std::array<int, 2> node;
};

/// All D^(a,b) N_j at one point for a + b <= max_deriv.
class ShapeTable {
public:
    ShapeTable(int max_deriv, int num_shapes)
        : max_deriv_(max_deriv),
          num_shapes_(num_shapes),
          data_(static_cast<std::size_t>(max_deriv + 1) * (max_deriv + 1) * num_shapes, 0.0) {}

    int max_deriv() const noexcept { return max_deriv_; }
    int num_shapes() const noexcept { return num_shapes_; }
    double operator()(MultiIndex d, int j) const { return data_[offset(d) + j]; }
    double& operator()(MultiIndex d, int j) { return data_[offset(d) + j]; }

private:
    std::size_t offset(MultiIndex d) const {
        return (static_cast<std::size_t>(d.a) * (max_deriv_ + 1) + d.b) * num_shapes_;
    }
    int max_deriv_;
    int num_shapes_;
    std::vector<double> data_;
};

/// Reference element on [-1, 1]^2. Shape functions are the columns of the
/// inverse generalized Vandermonde matrix in the monomial basis, so
/// dof_i(N_j) = delta_ij.
class ReferenceElement {
public:
    Family family() const noexcept { return family_; }
    int m() const noexcept { return m_; }
    int size() const noexcept { return static_cast<int>(dofs_.size()); }
    const std::vector<MultiIndex>& monomials() const noexcept { return monomials_; }
    const std::vector<DofFunctional>& dofs() const noexcept { return dofs_; }
    /// Column j holds the monomial coefficients of shape function j.
    const Eigen::MatrixXd& coeffs() const noexcept { return coeffs_; }
    double vandermonde_condition() const noexcept { return vandermonde_condition_; }

    /// Default points per axis for volume integrals of this family.
    int default_quadrature_points() const noexcept;

    ShapeTable eval(Point ref, int max_deriv) const;

    friend ReferenceElement make_element(Family family, std::vector<MultiIndex> monomials,
                                         std::vector<DofFunctional> dofs);

private:
    Family family_ = Family::bfs;
    int m_ = 2;
    std::vector<MultiIndex> monomials_;
    std::vector<DofFunctional> dofs_;
    Eigen::MatrixXd coeffs_;
    double vandermonde_condition_ = 1.0;
};

ReferenceElement build_element(Family family);

/// Element from an explicit monomial basis and DOF set. Throws Error when the
/// counts differ or the generalized Vandermonde matrix is too ill-conditioned
/// to invert.
ReferenceElement make_element(Family family, std::vector<MultiIndex> monomials,
                              std::vector<DofFunctional> dofs);

/// Functional `dof` applied to the monomial x^p y^q (exponents `mono`).
double apply_functional(const DofFunctional& dof, MultiIndex mono);

/// Multinomial weights m!/alpha! for |alpha| = m, paired with alpha
/// (alpha ordered by decreasing x-order).
std::vector<std::pair<MultiIndex, double>> energy_weights(int m);

/// Cell stiffness for the order-2m energy sum_{|alpha|=m} (m!/alpha!)
/// int_T D^alpha u D^alpha v on a square of side h. Derivative DOFs are in
/// reference scaling, i.e. (h/2)^{|beta|} D^beta u.
Eigen::MatrixXd local_stiffness(const ReferenceElement& elem, double h,
                                const QuadratureRule& quad);

using ScalarField = std::function<double(Point)>;

/// b_i = int_T f N_i over the cell with lower-left corner `origin` and side h.
Eigen::VectorXd local_load(const ReferenceElement& elem, Point origin, double h,
                           const ScalarField& f, const QuadratureRule& quad);

/// Physical point of a reference point in the cell at `origin` with side h.
inline Point to_physical(Point origin, double h, Point ref) {
    return {origin[0] + 0.5 * h * (ref[0] + 1.0), origin[1] + 0.5 * h * (ref[1] + 1.0)};
}

}  // namespace polyschwarz
