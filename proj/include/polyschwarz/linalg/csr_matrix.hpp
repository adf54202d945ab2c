#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polyschwarz::linalg {

using Index = std::int64_t;

/// Compressed sparse row matrix with sorted, unique column indices per row.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(Index rows, Index cols, std::vector<Index> row_ptr,
              std::vector<Index> col_idx, std::vector<double> values);

    static CsrMatrix identity(Index n);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

    std::span<const Index> row_ptr() const noexcept { return row_ptr_; }
    std::span<const Index> col_idx() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    std::span<const Index> row_cols(Index i) const;
    std::span<const double> row_values(Index i) const;

    /// Stored value at (i, j), zero if the slot is not in the pattern.
    double at(Index i, Index j) const;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    CsrMatrix transpose() const;

    /// Principal submatrix A(idx, idx); `idx` must be sorted and unique.
    CsrMatrix principal_submatrix(std::span<const Index> idx) const;

    double max_abs() const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> row_ptr_{0};
    std::vector<Index> col_idx_;
    std::vector<double> values_;
};

struct Triplet {
    Index row;
    Index col;
    double value;
};

/// Unordered (row, col, value) contributions, compacted into CSR with
/// duplicates summed in insertion order.
class TripletBuffer {
public:
    TripletBuffer(Index rows, Index cols) : rows_(rows), cols_(cols) {}

    void add(Index row, Index col, double value) {
        entries_.push_back({row, col, value});
    }
    void reserve(std::size_t n) { entries_.reserve(n); }
    void append(const TripletBuffer& other);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    std::span<const Triplet> entries() const noexcept { return entries_; }

    /// Throws DimensionError for an out-of-range index.
    CsrMatrix compact() const;

private:
    Index rows_;
    Index cols_;
    std::vector<Triplet> entries_;
};

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double beta = 1.0);
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b);

/// R A R^T, symmetrized.
CsrMatrix triple_product(const CsrMatrix& r, const CsrMatrix& a);

/// (A + A^T) / 2, bitwise symmetric.
CsrMatrix symmetric_part(const CsrMatrix& a);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace polyschwarz::linalg
