#include "polyschwarz/linalg/csr_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz::linalg {

CsrMatrix::CsrMatrix(Index rows, Index cols, std::vector<Index> row_ptr,
                     std::vector<Index> col_idx, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
    if (static_cast<Index>(row_ptr_.size()) != rows_ + 1 ||
        col_idx_.size() != values_.size() ||
        row_ptr_.back() != static_cast<Index>(values_.size())) {
        throw DimensionError("CsrMatrix: inconsistent CSR arrays");
    }
}

CsrMatrix CsrMatrix::identity(Index n) {
    std::vector<Index> ptr(n + 1);
    std::iota(ptr.begin(), ptr.end(), Index{0});
    std::vector<Index> cols(n);
    std::iota(cols.begin(), cols.end(), Index{0});
    return CsrMatrix(n, n, std::move(ptr), std::move(cols),
                     std::vector<double>(n, 1.0));
}

std::span<const Index> CsrMatrix::row_cols(Index i) const {
    return std::span<const Index>(col_idx_).subspan(
        row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
}

std::span<const double> CsrMatrix::row_values(Index i) const {
    return std::span<const double>(values_).subspan(
        row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]);
}

double CsrMatrix::at(Index i, Index j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values_[row_ptr_[i] + (it - cols.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<Index>(x.size()) != cols_ ||
        static_cast<Index>(y.size()) != rows_) {
        throw DimensionError("CsrMatrix::multiply: dimension mismatch");
    }
    for (Index i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            s += values_[p] * x[col_idx_[p]];
        }
        y[i] = s;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

CsrMatrix CsrMatrix::transpose() const {
    std::vector<Index> ptr(cols_ + 1, 0);
    for (Index c : col_idx_) ++ptr[c + 1];
    std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
    std::vector<Index> next(ptr.begin(), ptr.end() - 1);
    std::vector<Index> cols(nnz());
    std::vector<double> vals(nnz());
    // Rows are visited in increasing order, so each transposed row is sorted.
    for (Index i = 0; i < rows_; ++i) {
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            Index q = next[col_idx_[p]]++;
            cols[q] = i;
            vals[q] = values_[p];
        }
    }
    return CsrMatrix(cols_, rows_, std::move(ptr), std::move(cols),
                     std::move(vals));
}

CsrMatrix CsrMatrix::principal_submatrix(std::span<const Index> idx) const {
    const Index n = static_cast<Index>(idx.size());
    std::vector<Index> local(cols_, -1);
    for (Index k = 0; k < n; ++k) {
        if (idx[k] < 0 || idx[k] >= std::min(rows_, cols_)) {
            throw DimensionError("principal_submatrix: index out of range");
        }
        local[idx[k]] = k;
    }
    std::vector<Index> ptr{0};
    ptr.reserve(n + 1);
    std::vector<Index> cols;
    std::vector<double> vals;
    for (Index k = 0; k < n; ++k) {
        const Index i = idx[k];
        for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
            const Index j = local[col_idx_[p]];
            if (j >= 0) {
                cols.push_back(j);
                vals.push_back(values_[p]);
            }
        }
        ptr.push_back(static_cast<Index>(cols.size()));
    }
    return CsrMatrix(n, n, std::move(ptr), std::move(cols), std::move(vals));
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void TripletBuffer::append(const TripletBuffer& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw DimensionError("TripletBuffer::append: shape mismatch");
    }
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

CsrMatrix TripletBuffer::compact() const {
    // Bucket by row keeping insertion order, then stable-sort each row by
    // column; duplicates are summed in insertion order.
    std::vector<Index> count(rows_ + 1, 0);
    for (const auto& t : entries_) {
        if (t.row < 0 || t.row >= rows_ || t.col < 0 || t.col >= cols_) {
            throw DimensionError("TripletBuffer::compact: index (" +
                                 std::to_string(t.row) + ", " +
                                 std::to_string(t.col) + ") out of range");
        }
        ++count[t.row + 1];
    }
    std::partial_sum(count.begin(), count.end(), count.begin());
    std::vector<std::pair<Index, double>> bucket(entries_.size());
    std::vector<Index> next(count.begin(), count.end() - 1);
    for (const auto& t : entries_) bucket[next[t.row]++] = {t.col, t.value};

    std::vector<Index> ptr(rows_ + 1, 0);
    std::vector<Index> cols;
    std::vector<double> vals;
    cols.reserve(entries_.size());
    vals.reserve(entries_.size());
    for (Index i = 0; i < rows_; ++i) {
        auto first = bucket.begin() + count[i];
        auto last = bucket.begin() + count[i + 1];
        std::stable_sort(first, last, [](const auto& a, const auto& b) {
            return a.first < b.first;
        });
        for (auto it = first; it != last; ++it) {
            if (!cols.empty() && static_cast<Index>(cols.size()) > ptr[i] &&
                cols.back() == it->first) {
                vals.back() += it->second;
            } else {
                cols.push_back(it->first);
                vals.push_back(it->second);
            }
        }
        ptr[i + 1] = static_cast<Index>(cols.size());
    }
    return CsrMatrix(rows_, cols_, std::move(ptr), std::move(cols),
                     std::move(vals));
}

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double beta) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("add: dimension mismatch");
    }
    std::vector<Index> ptr{0};
    std::vector<Index> cols;
    std::vector<double> vals;
    for (Index i = 0; i < a.rows(); ++i) {
        auto ac = a.row_cols(i);
        auto av = a.row_values(i);
        auto bc = b.row_cols(i);
        auto bv = b.row_values(i);
        std::size_t p = 0, q = 0;
        while (p < ac.size() || q < bc.size()) {
            if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
                cols.push_back(ac[p]);
                vals.push_back(av[p++]);
            } else if (p == ac.size() || bc[q] < ac[p]) {
                cols.push_back(bc[q]);
                vals.push_back(beta * bv[q++]);
            } else {
                cols.push_back(ac[p]);
                vals.push_back(av[p++] + beta * bv[q++]);
            }
        }
        ptr.push_back(static_cast<Index>(cols.size()));
    }
    return CsrMatrix(a.rows(), a.cols(), std::move(ptr), std::move(cols),
                     std::move(vals));
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: dimension mismatch");
    // Gustavson's row-by-row product with a dense accumulator.
    std::vector<double> acc(b.cols(), 0.0);
    std::vector<Index> mark(b.cols(), -1);
    std::vector<Index> ptr{0};
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<Index> row_pattern;
    for (Index i = 0; i < a.rows(); ++i) {
        row_pattern.clear();
        auto ac = a.row_cols(i);
        auto av = a.row_values(i);
        for (std::size_t p = 0; p < ac.size(); ++p) {
            auto bc = b.row_cols(ac[p]);
            auto bv = b.row_values(ac[p]);
            for (std::size_t q = 0; q < bc.size(); ++q) {
                if (mark[bc[q]] != i) {
                    mark[bc[q]] = i;
                    acc[bc[q]] = 0.0;
                    row_pattern.push_back(bc[q]);
                }
                acc[bc[q]] += av[p] * bv[q];
            }
        }
        std::sort(row_pattern.begin(), row_pattern.end());
        for (Index j : row_pattern) {
            cols.push_back(j);
            vals.push_back(acc[j]);
        }
        ptr.push_back(static_cast<Index>(cols.size()));
    }
    return CsrMatrix(a.rows(), b.cols(), std::move(ptr), std::move(cols),
                     std::move(vals));
}

CsrMatrix triple_product(const CsrMatrix& r, const CsrMatrix& a) {
    if (r.cols() != a.rows() || a.rows() != a.cols()) {
        throw DimensionError("triple_product: R is " + std::to_string(r.rows()) +
                             "x" + std::to_string(r.cols()) + ", A is " +
                             std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    }
    const CsrMatrix rt = r.transpose();
    return symmetric_part(multiply(r, multiply(a, rt)));
}

CsrMatrix symmetric_part(const CsrMatrix& a) {
    CsrMatrix sym = add(a, a.transpose());
    for (double& v : sym.values()) v *= 0.5;
    return sym;
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace polyschwarz::linalg
