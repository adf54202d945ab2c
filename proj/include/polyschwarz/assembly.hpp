#pragma once

#include <functional>
#include <span>
#include <vector>

#include "polyschwarz/elements.hpp"
#include "polyschwarz/geometry.hpp"
#include "polyschwarz/linalg/csr_matrix.hpp"

namespace polyschwarz {

using linalg::CsrMatrix;
using linalg::Index;

inline constexpr Index kEliminated = -1;

/// Global numbering of the free degrees of freedom of one family on one mesh.
///
/// Anchors are kept on the half-cell lattice: fine vertex i sits at 2i, an
/// edge midpoint or cell centre at an odd coordinate. Vertex families (bfs,
/// adini, jinwu) eliminate every DOF at a boundary vertex; c0ip eliminates
/// the Lagrange nodes on the boundary. Free DOFs are numbered
/// lexicographically by anchor (y outer, x inner), then by derivative.
class DofMap {
public:
    DofMap(const CartesianMesh& mesh, const ReferenceElement& elem);

    const CartesianMesh& mesh() const noexcept { return mesh_; }
    Family family() const noexcept { return family_; }
    Index free_count() const noexcept { return static_cast<Index>(anchors_.size()); }
    int dofs_per_cell() const noexcept { return static_cast<int>(local_.size()); }

    /// Half-cell lattice position of free DOF g.
    std::array<int, 2> anchor(Index g) const { return anchors_[g]; }
    Point anchor_point(Index g) const;
    MultiIndex deriv(Index g) const { return derivs_[g]; }

    /// Global index (or kEliminated) of local DOF k of cell (i, j).
    Index global_index(int i, int j, int k) const;
    std::vector<Index> cell_dofs(int i, int j) const;

private:
    struct LocalDof {
        std::array<int, 2> node;  // 0..2 on the element's 3x3 lattice
        MultiIndex deriv;
        int slot;  // derivative slot within the anchor
    };

    CartesianMesh mesh_;
    Family family_;
    int per_anchor_ = 1;
    std::vector<LocalDof> local_;
    std::vector<std::array<int, 2>> anchors_;
    std::vector<MultiIndex> derivs_;
};

inline DofMap build_dofmap(const CartesianMesh& mesh, const ReferenceElement& elem) {
    return DofMap(mesh, elem);
}

/// Broken (cell-by-cell) energy matrix; eliminated rows/columns dropped.
CsrMatrix assemble_stiffness(const ReferenceElement& elem, const DofMap& dofs);

enum class EdgeTerms { all, consistency, penalty };

/// Interior-penalty edge contribution of the c0ip form with penalty eta / |e|.
/// Throws ConfigError for a non-c0ip element or eta <= 0.
CsrMatrix assemble_c0ip_edges(const ReferenceElement& elem, const DofMap& dofs, double eta,
                              EdgeTerms terms = EdgeTerms::all);

/// Full system matrix a_h: volume terms plus, for c0ip, the edge terms.
CsrMatrix assemble_system(const ReferenceElement& elem, const DofMap& dofs, double eta = 5.0);

std::vector<double> assemble_load(const ReferenceElement& elem, const DofMap& dofs,
                                  const ScalarField& f);

/// Derivatives D^(a,b) u of a smooth field.
using DerivativeField = std::function<double(Point, MultiIndex)>;

/// Nodal interpolant: free DOF g gets (h/2)^{|beta|} D^beta u(anchor).
std::vector<double> interpolate(const DofMap& dofs, const DerivativeField& u);

/// Local coefficient vector of cell (i, j) gathered from free values
/// (eliminated DOFs read as 0).
Eigen::VectorXd gather_cell(const DofMap& dofs, int i, int j, std::span<const double> u);

}  // namespace polyschwarz
