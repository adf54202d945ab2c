#pragma once

#include <span>
#include <utility>
#include <vector>

#include "polyschwarz/linalg/csr_matrix.hpp"
#include "polyschwarz/schwarz.hpp"

namespace polyschwarz {

struct PcgOptions {
    double tol = 1e-8;
    int max_iters = 2000;
    /// Keep the iterate, residual and search direction in long double and
    /// apply the preconditioner in double. In pure double the true relative
    /// residual of a smooth solution stalls near 1e-16 * cond(A).
    bool extended_precision = true;
};

struct PcgReport {
    int iterations = 0;
    /// ||A u_n - f|| / ||A u_0 - f|| for n = 0..iterations (u_0 = 0).
    std::vector<double> relative_residuals;
    /// lambda_max / lambda_min of the Lanczos tridiagonal matrix (an estimate
    /// of kappa(M^{-1} A)).
    double kappa_estimate = 1.0;
    double lambda_min = 1.0;
    double lambda_max = 1.0;
    bool converged = false;
    /// Smallest z^T r seen during the iteration.
    double min_rz = 0.0;
    std::vector<double> solution;
};

/// Preconditioned conjugate gradients from u_0 = 0, stopping on the true
/// relative residual. Throws SolverBreakdown when p^T A p <= 0 ("matrix not
/// SPD") or z^T r <= 0 ("preconditioner not SPD").
PcgReport pcg(const linalg::CsrMatrix& a, const Preconditioner& m, std::span<const double> f,
              const PcgOptions& opts = {});

/// Extreme eigenvalues of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal, by Sturm-sequence bisection.
std::pair<double, double> tridiagonal_extremes(std::span<const double> diag,
                                               std::span<const double> offdiag);

}  // namespace polyschwarz
