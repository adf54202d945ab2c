#pragma once

#include <vector>

#include "polyschwarz/linalg/csr_matrix.hpp"

namespace polyschwarz::linalg {

/// Fill-reducing permutation of a structurally symmetric matrix by recursive
/// level-set nested dissection. Returns `perm` with perm[new] = old.
/// Parts with at most `leaf_size` vertices keep their breadth-first order.
std::vector<Index> nested_dissection(const CsrMatrix& a, Index leaf_size = 48);

/// Inverse of a permutation.
std::vector<Index> invert_permutation(const std::vector<Index>& perm);

}  // namespace polyschwarz::linalg
