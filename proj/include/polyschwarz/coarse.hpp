#pragma once

#include <vector>

#include "polyschwarz/assembly.hpp"
#include "polyschwarz/geometry.hpp"
#include "polyschwarz/linalg/cholesky.hpp"

namespace polyschwarz {

/// k-th derivative of the 1-D Hermite value profile psi of degree 2m - 1 on
/// [-1, 1]: psi(0) = 1, psi^(j)(0) = 0 for 1 <= j < m, psi^(j)(+-1) = 0 for
/// 0 <= j < m, and psi = 0 outside [-1, 1]. At t = 0 the right-sided
/// derivative is returned (psi is C^{m-1} there).
double hermite_profile(int m, double t, int k);

/// phi_i(x) = psi((x1 - x1^i)/H) psi((x2 - x2^i)/H), supported on the 2 x 2
/// coarse-cell patch around vertex x^i.
class CoarseGenerator {
public:
    CoarseGenerator(const CartesianMesh& coarse, int m, int vi, int vj);

    int m() const noexcept { return m_; }
    Point center() const noexcept { return center_; }
    double coarse_size() const noexcept { return H_; }
    /// D^(a,b) phi_i(x) for points of the closed unit square.
    double derivative(Point x, MultiIndex d) const;
    double value(Point x) const { return derivative(x, {0, 0}); }

private:
    int m_;
    Point center_;
    double H_;
};

inline CoarseGenerator build_generator(const CartesianMesh& coarse, int m, int vi, int vj) {
    return CoarseGenerator(coarse, m, vi, vj);
}

/// Label of one coarse basis function phi_i * p_ab.
struct CoarseBasisFunction {
    int vi, vj;    // coarse vertex
    MultiIndex p;  // polynomial exponents (a, b), a + b <= m - 1
};

struct CoarseOptions {
    /// Centre polynomial factors at x^i and divide by H; false uses the plain
    /// monomials x1^a x2^b (same span).
    bool scaled_monomials = true;
};

/// V_0 = span{phi_i p : interior coarse vertex i, p in P_{m-1}} with its
/// nodal-interpolation prolongation into the fine space and the factorized
/// Galerkin operator A_0 = R_0 A R_0^T.
class CoarseSpace {
public:
    CoarseSpace(const CartesianMesh& coarse, int m, const DofMap& fine, const CsrMatrix& a,
                const CoarseOptions& opts = {});

    int m() const noexcept { return m_; }
    Index dimension() const noexcept { return static_cast<Index>(basis_.size()); }
    const std::vector<CoarseBasisFunction>& basis() const noexcept { return basis_; }
    /// R_0^T: (fine free DOFs) x dim V_0.
    const CsrMatrix& prolongation() const noexcept { return prolongation_; }
    /// R_0: dim V_0 x (fine free DOFs).
    const CsrMatrix& restriction() const noexcept { return restriction_; }
    const CsrMatrix& coarse_matrix() const noexcept { return coarse_matrix_; }
    const linalg::SpdFactorization& factorization() const noexcept { return factor_; }

    /// z += R_0^T A_0^{-1} R_0 r
    void apply_add(std::span<const double> r, std::span<double> z) const;

private:
    int m_;
    std::vector<CoarseBasisFunction> basis_;
    CsrMatrix prolongation_;
    CsrMatrix restriction_;
    CsrMatrix coarse_matrix_;
    linalg::SpdFactorization factor_;
};

inline CoarseSpace build_coarse_space(const CartesianMesh& coarse, int m, const DofMap& fine,
                                      const CsrMatrix& a, const CoarseOptions& opts = {}) {
    return CoarseSpace(coarse, m, fine, a, opts);
}

}  // namespace polyschwarz
