#include "polyschwarz/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz {

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly below x.
int sturm_count(std::span<const double> d, std::span<const double> e, double x) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double e2 = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
        q = d[i] - x - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -std::numeric_limits<double>::min();
        if (q < 0.0) ++count;
    }
    return count;
}

double bisect_eigenvalue(std::span<const double> d, std::span<const double> e, int k,
                         double lo, double hi) {
    // k-th smallest eigenvalue (0-based) lies in [lo, hi].
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() *
                                                 std::max(std::abs(lo), std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class Real>
Real dot(const std::vector<Real>& x, const std::vector<Real>& y) {
    Real s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

template <class Real>
void spmv(const linalg::CsrMatrix& a, const std::vector<Real>& x, std::vector<Real>& y) {
    const auto ptr = a.row_ptr();
    const auto col = a.col_idx();
    const auto val = a.values();
    for (Index i = 0; i < a.rows(); ++i) {
        Real s = 0;
        for (Index k = ptr[i]; k < ptr[i + 1]; ++k) s += static_cast<Real>(val[k]) * x[col[k]];
        y[i] = s;
    }
}

template <class Real>
PcgReport pcg_impl(const linalg::CsrMatrix& a, const Preconditioner& m, std::span<const double> f,
                   const PcgOptions& opts) {
    const Index n = a.rows();
    PcgReport rep;
    rep.relative_residuals.push_back(1.0);
    const std::vector<Real> fr(f.begin(), f.end());
    const Real fnorm = std::sqrt(dot(fr, fr));
    if (fnorm == 0) {
        rep.solution.assign(n, 0.0);
        rep.converged = true;
        return rep;
    }

    std::vector<Real> u(n, Real(0)), r = fr, z(n), p(n), q(n), res(n);
    std::vector<double> rd(n), zd(n);
    std::vector<double> alphas, betas;
    auto precondition = [&] {
        for (Index i = 0; i < n; ++i) rd[i] = static_cast<double>(r[i]);
        m.apply(rd, zd);
        for (Index i = 0; i < n; ++i) z[i] = zd[i];
    };
    precondition();
    Real rz = dot(r, z);
    if (!(rz > 0)) {
        throw SolverBreakdown("preconditioner not SPD: z^T r = " +
                              std::to_string(static_cast<double>(rz)) + " at iteration 0");
    }
    rep.min_rz = static_cast<double>(rz);
    p = z;
    for (int it = 0; it < opts.max_iters; ++it) {
        spmv(a, p, q);
        const Real pq = dot(p, q);
        if (!(pq > 0)) {
            throw SolverBreakdown("matrix not SPD: p^T A p = " +
                                  std::to_string(static_cast<double>(pq)) + " at iteration " +
                                  std::to_string(it + 1));
        }
        const Real alpha = rz / pq;
        alphas.push_back(static_cast<double>(alpha));
        for (Index i = 0; i < n; ++i) {
            u[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }

        spmv(a, u, res);
        for (Index i = 0; i < n; ++i) res[i] -= fr[i];
        const double rel = static_cast<double>(std::sqrt(dot(res, res)) / fnorm);
        rep.relative_residuals.push_back(rel);
        rep.iterations = it + 1;
        if (rel <= opts.tol) {
            rep.converged = true;
            break;
        }

        precondition();
        const Real rz_new = dot(r, z);
        if (!(rz_new > 0)) {
            throw SolverBreakdown("preconditioner not SPD: z^T r = " +
                                  std::to_string(static_cast<double>(rz_new)) +
                                  " at iteration " + std::to_string(it + 1));
        }
        rep.min_rz = std::min(rep.min_rz, static_cast<double>(rz_new));
        const Real beta = rz_new / rz;
        betas.push_back(static_cast<double>(beta));
        for (Index i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rz = rz_new;
    }
    rep.solution.assign(u.begin(), u.end());

    // Lanczos matrix of M^{-1} A from the CG coefficients.
    const std::size_t k = alphas.size();
    if (k > 0) {
        std::vector<double> diag(k), off(k - 1);
        for (std::size_t j = 0; j < k; ++j) {
            diag[j] = 1.0 / alphas[j] + (j > 0 ? betas[j - 1] / alphas[j - 1] : 0.0);
            if (j + 1 < k) off[j] = std::sqrt(betas[j]) / alphas[j];
        }
        const auto [lo, hi] = tridiagonal_extremes(diag, off);
        rep.lambda_min = lo;
        rep.lambda_max = hi;
        rep.kappa_estimate = lo > 0.0 ? std::max(1.0, hi / lo) : INFINITY;
    }
    return rep;
}

}  // namespace

std::pair<double, double> tridiagonal_extremes(std::span<const double> diag,
                                               std::span<const double> offdiag) {
    if (diag.empty()) return {0.0, 0.0};
    if (offdiag.size() + 1 != diag.size()) {
        throw DimensionError("tridiagonal_extremes: off-diagonal length must be n - 1");
    }
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                         (i + 1 < diag.size() ? std::abs(offdiag[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const int n = static_cast<int>(diag.size());
    return {bisect_eigenvalue(diag, offdiag, 0, lo, hi),
            bisect_eigenvalue(diag, offdiag, n - 1, lo, hi)};
}

PcgReport pcg(const linalg::CsrMatrix& a, const Preconditioner& m, std::span<const double> f,
              const PcgOptions& opts) {
    const Index n = a.rows();
    if (a.cols() != n || static_cast<Index>(f.size()) != n || m.dimension() != n) {
        throw DimensionError("pcg: dimension mismatch");
    }
    return opts.extended_precision ? pcg_impl<long double>(a, m, f, opts)
                                   : pcg_impl<double>(a, m, f, opts);
}

}  // namespace polyschwarz
