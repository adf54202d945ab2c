#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "polyschwarz/linalg/csr_matrix.hpp"

// Dense helpers used by oracles and small element kernels.
namespace polyschwarz::linalg {

Eigen::MatrixXd to_dense(const CsrMatrix& a);

/// Dense matrix of a linear operator, built column by column from unit vectors.
Eigen::MatrixXd dense_operator(
    Index n, const std::function<void(std::span<const double>, std::span<double>)>& apply);

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// lambda_max / lambda_min of an SPD matrix.
double spd_condition_number(const Eigen::MatrixXd& a);

/// Condition number of B A where A and B are SPD (B plays the role of M^{-1}):
/// eigenvalues of L^T A L with B = L L^T.
double preconditioned_condition_number(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace polyschwarz::linalg
