#pragma once

// Numerical thresholds shared across modules and tests.
namespace polyschwarz::tol {

inline constexpr double solve_residual = 1e-10;
inline constexpr double algebraic_identity = 1e-12;
inline constexpr double unisolvence = 1e-12;
inline constexpr double vandermonde_condition_max = 1e8;
inline constexpr double kernel_eigen_ratio = 1e-10;
inline constexpr double coarse_pivot_ratio = 1e-12;
inline constexpr double operator_symmetry = 1e-10;

}  // namespace polyschwarz::tol
