#include "polyschwarz/linalg/cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/linalg/ordering.hpp"

namespace polyschwarz::linalg {

namespace {

void require_square(const CsrMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("factorize_spd: matrix is " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    }
}

double max_diagonal(const CsrMatrix& a) {
    double m = 0.0;
    for (Index i = 0; i < a.rows(); ++i) m = std::max(m, a.at(i, i));
    return m;
}

[[noreturn]] void throw_not_spd(Index original_row, double pivot) {
    throw NotSpdError("matrix not SPD: pivot " + std::to_string(pivot) +
                          " at row " + std::to_string(original_row),
                      original_row);
}

}  // namespace

SparseCholesky::SparseCholesky(const CsrMatrix& a, const FactorOptions& opts)
    : n_(a.rows()) {
    require_square(a);
    const Index n = n_;
    perm_ = nested_dissection(a);
    const std::vector<Index> pinv = invert_permutation(perm_);
    const double pivot_floor = opts.min_pivot_ratio * max_diagonal(a);

    // Upper triangle of C = P A P^T by columns.
    std::vector<Index> cp(n + 1, 0);
    for (Index k = 0; k < n; ++k) {
        for (Index j : a.row_cols(perm_[k])) cp[k + 1] += (pinv[j] <= k);
    }
    for (Index k = 0; k < n; ++k) cp[k + 1] += cp[k];
    std::vector<Index> ci(cp[n]);
    std::vector<double> cx(cp[n]);
    for (Index k = 0; k < n; ++k) {
        auto cols = a.row_cols(perm_[k]);
        auto vals = a.row_values(perm_[k]);
        Index q = cp[k];
        for (std::size_t p = 0; p < cols.size(); ++p) {
            const Index i = pinv[cols[p]];
            if (i <= k) {
                ci[q] = i;
                cx[q++] = vals[p];
            }
        }
    }

    // Elimination tree.
    std::vector<Index> parent(n, -1), ancestor(n, -1);
    for (Index k = 0; k < n; ++k) {
        for (Index p = cp[k]; p < cp[k + 1]; ++p) {
            Index i = ci[p];
            while (i != -1 && i < k) {
                const Index next = ancestor[i];
                ancestor[i] = k;
                if (next == -1) parent[i] = k;
                i = next;
            }
        }
    }

    // Row k of L is the reach of column k's pattern in the elimination tree;
    // s[top..n) receives it in topological order.
    std::vector<Index> mark(n, -1), stack(n);
    auto ereach = [&](Index k) {
        Index top = n;
        mark[k] = k;
        for (Index p = cp[k]; p < cp[k + 1]; ++p) {
            Index i = ci[p];
            if (i > k) continue;
            Index len = 0;
            for (; mark[i] != k; i = parent[i]) {
                stack[len++] = i;
                mark[i] = k;
            }
            while (len > 0) stack[--top] = stack[--len];
        }
        return top;
    };

    std::vector<Index> counts(n, 1);
    for (Index k = 0; k < n; ++k) {
        for (Index t = ereach(k); t < n; ++t) ++counts[stack[t]];
    }
    lp_.assign(n + 1, 0);
    for (Index k = 0; k < n; ++k) lp_[k + 1] = lp_[k] + counts[k];
    li_.resize(lp_[n]);
    lx_.resize(lp_[n]);

    std::fill(mark.begin(), mark.end(), -1);
    std::vector<Index> next(lp_.begin(), lp_.end() - 1);
    std::vector<double> x(n, 0.0);
    for (Index k = 0; k < n; ++k) {
        const Index top = ereach(k);
        x[k] = 0.0;
        for (Index p = cp[k]; p < cp[k + 1]; ++p) x[ci[p]] += cx[p];
        double d = x[k];
        x[k] = 0.0;
        for (Index t = top; t < n; ++t) {
            const Index i = stack[t];
            const double lki = x[i] / lx_[lp_[i]];
            x[i] = 0.0;
            for (Index p = lp_[i] + 1; p < next[i]; ++p) x[li_[p]] -= lx_[p] * lki;
            d -= lki * lki;
            const Index p = next[i]++;
            li_[p] = k;
            lx_[p] = lki;
        }
        if (!(d > 0.0) || d <= pivot_floor) throw_not_spd(perm_[k], d);
        const Index p = next[k]++;
        li_[p] = k;
        lx_[p] = std::sqrt(d);
    }
}

void SparseCholesky::solve_in_place(std::span<double> b) const {
    const Index n = n_;
    std::vector<double> x(n);
    for (Index k = 0; k < n; ++k) x[k] = b[perm_[k]];
    for (Index j = 0; j < n; ++j) {
        x[j] /= lx_[lp_[j]];
        const double xj = x[j];
        for (Index p = lp_[j] + 1; p < lp_[j + 1]; ++p) x[li_[p]] -= lx_[p] * xj;
    }
    for (Index j = n - 1; j >= 0; --j) {
        double s = x[j];
        for (Index p = lp_[j] + 1; p < lp_[j + 1]; ++p) s -= lx_[p] * x[li_[p]];
        x[j] = s / lx_[lp_[j]];
    }
    for (Index k = 0; k < n; ++k) b[perm_[k]] = x[k];
}

DenseCholesky::DenseCholesky(const CsrMatrix& a, const FactorOptions& opts)
    : n_(a.rows()), l_(static_cast<std::size_t>(a.rows() * a.rows()), 0.0) {
    require_square(a);
    const Index n = n_;
    for (Index i = 0; i < n; ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            if (cols[p] <= i) l_[i * n + cols[p]] = vals[p];
        }
    }
    const double pivot_floor = opts.min_pivot_ratio * max_diagonal(a);
    for (Index j = 0; j < n; ++j) {
        double d = l_[j * n + j];
        for (Index k = 0; k < j; ++k) d -= l_[j * n + k] * l_[j * n + k];
        if (!(d > 0.0) || d <= pivot_floor) throw_not_spd(j, d);
        const double ljj = std::sqrt(d);
        l_[j * n + j] = ljj;
        for (Index i = j + 1; i < n; ++i) {
            double s = l_[i * n + j];
            for (Index k = 0; k < j; ++k) s -= l_[i * n + k] * l_[j * n + k];
            l_[i * n + j] = s / ljj;
        }
    }
}

void DenseCholesky::solve_in_place(std::span<double> x) const {
    const Index n = n_;
    for (Index i = 0; i < n; ++i) {
        double s = x[i];
        for (Index k = 0; k < i; ++k) s -= l_[i * n + k] * x[k];
        x[i] = s / l_[i * n + i];
    }
    for (Index i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (Index k = i + 1; k < n; ++k) s -= l_[k * n + i] * x[k];
        x[i] = s / l_[i * n + i];
    }
}

SpdFactorization::SpdFactorization(const CsrMatrix& a, const FactorOptions& opts) {
    if (a.rows() < opts.dense_threshold) {
        impl_.emplace<DenseCholesky>(a, opts);
    } else {
        impl_.emplace<SparseCholesky>(a, opts);
    }
}

Index SpdFactorization::dimension() const noexcept {
    if (auto* d = std::get_if<DenseCholesky>(&impl_)) return d->dimension();
    if (auto* s = std::get_if<SparseCholesky>(&impl_)) return s->dimension();
    return 0;
}

void SpdFactorization::solve(std::span<const double> b, std::span<double> x) const {
    if (static_cast<Index>(b.size()) != dimension() || x.size() != b.size()) {
        throw DimensionError("SpdFactorization::solve: dimension mismatch");
    }
    std::copy(b.begin(), b.end(), x.begin());
    if (auto* d = std::get_if<DenseCholesky>(&impl_)) {
        d->solve_in_place(x);
    } else if (auto* s = std::get_if<SparseCholesky>(&impl_)) {
        s->solve_in_place(x);
    }
}

std::vector<double> SpdFactorization::solve(std::span<const double> b) const {
    std::vector<double> x(b.size());
    solve(b, x);
    return x;
}

}  // namespace polyschwarz::linalg
