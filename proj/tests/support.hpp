#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "polyschwarz/linalg/csr_matrix.hpp"

namespace test_support {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240607);
    return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::vector<double> random_vector(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform();
    return v;
}

inline Eigen::MatrixXd dense(const polyschwarz::linalg::CsrMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (polyschwarz::linalg::Index i = 0; i < a.rows(); ++i) {
        const auto c = a.row_cols(i);
        const auto v = a.row_values(i);
        for (std::size_t k = 0; k < c.size(); ++k) d(i, c[k]) += v[k];
    }
    return d;
}

inline Eigen::VectorXd as_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return scale == 0.0 ? 0.0 : (a - b).cwiseAbs().maxCoeff() / scale;
}

/// Random SPD matrix: B B^T + n I.
inline Eigen::MatrixXd random_spd(int n) {
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = uniform();
    return b * b.transpose() + n * Eigen::MatrixXd::Identity(n, n);
}

inline polyschwarz::linalg::CsrMatrix to_csr(const Eigen::MatrixXd& d, double drop = 0.0) {
    polyschwarz::linalg::TripletBuffer t(d.rows(), d.cols());
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j)
            if (std::abs(d(i, j)) > drop) t.add(i, j, d(i, j));
    return t.compact();
}

/// 5-point Laplacian with Dirichlet rows on a k x k grid.
inline polyschwarz::linalg::CsrMatrix laplacian_2d(int k) {
    polyschwarz::linalg::TripletBuffer t(k * k, k * k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            const int r = j * k + i;
            t.add(r, r, 4.0);
            if (i > 0) t.add(r, r - 1, -1.0);
            if (i + 1 < k) t.add(r, r + 1, -1.0);
            if (j > 0) t.add(r, r - k, -1.0);
            if (j + 1 < k) t.add(r, r + k, -1.0);
        }
    return t.compact();
}

}  // namespace test_support
