#pragma once

#include <array>
#include <vector>

namespace polyschwarz {

using Point = std::array<double, 2>;

/// Uniform n x n grid of square cells over the unit square. Coordinates are
/// always formed as i / n, never accumulated.
class CartesianMesh {
public:
    /// Throws ConfigError for n < 1.
    explicit CartesianMesh(int cells_per_axis);

    int cells_per_axis() const noexcept { return n_; }
    double cell_size() const noexcept { return 1.0 / n_; }
    int num_cells() const noexcept { return n_ * n_; }
    int vertices_per_axis() const noexcept { return n_ + 1; }
    int num_vertices() const noexcept { return (n_ + 1) * (n_ + 1); }

    double coordinate(int i) const noexcept { return static_cast<double>(i) / n_; }
    Point vertex(int i, int j) const noexcept { return {coordinate(i), coordinate(j)}; }
    /// Lower-left corner of cell (i, j).
    Point cell_origin(int i, int j) const noexcept { return vertex(i, j); }

private:
    int n_;
};

inline CartesianMesh build_mesh(int n) { return CartesianMesh(n); }

/// Half-open box of fine cells [x0, x1) x [y0, y1).
struct CellBox {
    int x0, x1, y0, y1;

    bool contains_cell(int i, int j) const noexcept {
        return x0 <= i && i < x1 && y0 <= j && j < y1;
    }
    /// True when a point given in half-cell lattice units (2i = fine vertex i)
    /// lies in the open box.
    bool contains_lattice_point_strictly(int hx, int hy) const noexcept {
        return 2 * x0 < hx && hx < 2 * x1 && 2 * y0 < hy && hy < 2 * y1;
    }
    int width() const noexcept { return x1 - x0; }
    int height() const noexcept { return y1 - y0; }

    friend bool operator==(const CellBox&, const CellBox&) = default;
};

/// Coarse cells dilated by whole fine-cell layers; subdomains are stored in
/// row-major coarse-cell order (index = J * n_c + I).
class Decomposition {
public:
    Decomposition(const CartesianMesh& coarse, const CartesianMesh& fine, int overlap_layers);

    const CartesianMesh& coarse() const noexcept { return coarse_; }
    const CartesianMesh& fine() const noexcept { return fine_; }
    int overlap_layers() const noexcept { return layers_; }
    /// Fine cells per coarse cell along one axis (H / h).
    int ratio() const noexcept { return fine_.cells_per_axis() / coarse_.cells_per_axis(); }
    double delta() const noexcept { return static_cast<double>(layers_) / fine_.cells_per_axis(); }

    int num_subdomains() const noexcept { return static_cast<int>(boxes_.size()); }
    const CellBox& subdomain(int k) const { return boxes_.at(k); }
    const std::vector<CellBox>& subdomains() const noexcept { return boxes_; }

    /// Number of subdomains containing fine cell (i, j).
    int membership(int i, int j) const;

private:
    CartesianMesh coarse_;
    CartesianMesh fine_;
    int layers_;
    std::vector<CellBox> boxes_;
};

inline Decomposition build_decomposition(const CartesianMesh& coarse, const CartesianMesh& fine,
                                         int overlap_layers) {
    return Decomposition(coarse, fine, overlap_layers);
}

}  // namespace polyschwarz
