#pragma once

#include <filesystem>
#include <vector>

#include "polyschwarz/linalg/csr_matrix.hpp"

namespace polyschwarz::linalg {

/// Coordinate format, `general` symmetry, 1-based indices.
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a);
/// Reads `coordinate real` files with `general` or `symmetric` symmetry.
CsrMatrix read_matrix_market(const std::filesystem::path& path);

/// Dense column vector in `array real general` format.
void write_vector_market(const std::filesystem::path& path, std::span<const double> v);
std::vector<double> read_vector_market(const std::filesystem::path& path);

}  // namespace polyschwarz::linalg
