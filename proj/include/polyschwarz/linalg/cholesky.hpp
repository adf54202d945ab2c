#pragma once

#include <span>
#include <variant>
#include <vector>

#include "polyschwarz/linalg/csr_matrix.hpp"

namespace polyschwarz::linalg {

struct FactorOptions {
    /// Reject pivots d_k <= min_pivot_ratio * max_i A_ii (0 = reject only d_k <= 0).
    double min_pivot_ratio = 0.0;
    /// Below this dimension a dense Cholesky is used.
    Index dense_threshold = 64;
};

/// Up-looking sparse Cholesky P A P^T = L L^T with a nested-dissection P.
class SparseCholesky {
public:
    SparseCholesky(const CsrMatrix& a, const FactorOptions& opts);

    void solve_in_place(std::span<double> x) const;
    Index dimension() const noexcept { return n_; }
    Index factor_nnz() const noexcept { return static_cast<Index>(lx_.size()); }
    std::span<const Index> permutation() const noexcept { return perm_; }

private:
    Index n_ = 0;
    std::vector<Index> perm_;  // perm_[new] = old
    std::vector<Index> lp_;    // column pointers of L (CSC), diagonal first
    std::vector<Index> li_;
    std::vector<double> lx_;
};

/// Dense row-major Cholesky for small systems.
class DenseCholesky {
public:
    DenseCholesky(const CsrMatrix& a, const FactorOptions& opts);

    void solve_in_place(std::span<double> x) const;
    Index dimension() const noexcept { return n_; }

private:
    Index n_ = 0;
    std::vector<double> l_;
};

/// SPD factorization; solves are const and safe to call concurrently.
class SpdFactorization {
public:
    SpdFactorization() = default;
    /// Throws NotSpdError naming the offending row of `a`.
    explicit SpdFactorization(const CsrMatrix& a, const FactorOptions& opts = {});

    Index dimension() const noexcept;
    std::vector<double> solve(std::span<const double> b) const;
    void solve(std::span<const double> b, std::span<double> x) const;
    bool is_dense() const noexcept { return std::holds_alternative<DenseCholesky>(impl_); }

private:
    std::variant<std::monostate, DenseCholesky, SparseCholesky> impl_;
};

}  // namespace polyschwarz::linalg
