#include "polyschwarz/geometry.hpp"

#include <algorithm>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz {

CartesianMesh::CartesianMesh(int cells_per_axis) : n_(cells_per_axis) {
    if (n_ < 1) {
        throw ConfigError("mesh needs at least one cell per axis, got " + std::to_string(n_));
    }
}

Decomposition::Decomposition(const CartesianMesh& coarse, const CartesianMesh& fine,
                             int overlap_layers)
    : coarse_(coarse), fine_(fine), layers_(overlap_layers) {
    const int nc = coarse.cells_per_axis();
    const int nf = fine.cells_per_axis();
    if (nf % nc != 0 || nf == nc) {
        throw ConfigError("fine mesh (" + std::to_string(nf) +
                          " cells/axis) does not strictly refine coarse mesh (" +
                          std::to_string(nc) + " cells/axis)");
    }
    const int r = nf / nc;
    if (layers_ < 1 || layers_ >= r) {
        throw ConfigError("overlap layers must satisfy 1 <= l < H/h = " + std::to_string(r) +
                          ", got " + std::to_string(layers_));
    }
    boxes_.reserve(static_cast<std::size_t>(nc) * nc);
    for (int cj = 0; cj < nc; ++cj) {
        for (int ci = 0; ci < nc; ++ci) {
            boxes_.push_back({std::max(0, ci * r - layers_), std::min(nf, (ci + 1) * r + layers_),
                              std::max(0, cj * r - layers_), std::min(nf, (cj + 1) * r + layers_)});
        }
    }
}

int Decomposition::membership(int i, int j) const {
    return static_cast<int>(std::count_if(boxes_.begin(), boxes_.end(),
                                          [&](const CellBox& b) { return b.contains_cell(i, j); }));
}

}  // namespace polyschwarz
