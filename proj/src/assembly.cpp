#include "polyschwarz/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyschwarz/errors.hpp"

namespace polyschwarz {

namespace {

bool is_vertex_family(Family f) { return f != Family::c0ip; }

// Row-wise accumulator: contributions are summed in the order they arrive,
// so the result does not depend on anything but the cell/edge loop order.
class RowAccumulator {
public:
    explicit RowAccumulator(Index n) : rows_(n) {}

    void add(Index i, Index j, double v) {
        auto& row = rows_[i];
        for (auto& e : row) {
            if (e.first == j) {
                e.second += v;
                return;
            }
        }
        row.emplace_back(j, v);
    }

    template <typename Matrix>
    void scatter(std::span<const Index> g, const Matrix& k) {
        const Index n = static_cast<Index>(g.size());
        for (Index a = 0; a < n; ++a) {
            if (g[a] == kEliminated) continue;
            for (Index b = 0; b < n; ++b) {
                if (g[b] == kEliminated) continue;
                add(g[a], g[b], k(a, b));
            }
        }
    }

    CsrMatrix finish() {
        const Index n = static_cast<Index>(rows_.size());
        std::vector<Index> ptr(n + 1, 0);
        for (Index i = 0; i < n; ++i) ptr[i + 1] = ptr[i] + static_cast<Index>(rows_[i].size());
        std::vector<Index> cols(ptr[n]);
        std::vector<double> vals(ptr[n]);
        for (Index i = 0; i < n; ++i) {
            auto& row = rows_[i];
            std::sort(row.begin(), row.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            for (std::size_t p = 0; p < row.size(); ++p) {
                cols[ptr[i] + p] = row[p].first;
                vals[ptr[i] + p] = row[p].second;
            }
            std::vector<std::pair<Index, double>>().swap(row);
        }
        return CsrMatrix(n, n, std::move(ptr), std::move(cols), std::move(vals));
    }

private:
    std::vector<std::vector<std::pair<Index, double>>> rows_;
};

}  // namespace

DofMap::DofMap(const CartesianMesh& mesh, const ReferenceElement& elem)
    : mesh_(mesh), family_(elem.family()) {
    const int n = mesh.cells_per_axis();
    if (n < 2) {
        throw ConfigError("dof map needs at least 2 cells per axis (no free DOFs for n = " +
                          std::to_string(n) + ")");
    }
    const auto& dofs = elem.dofs();
    if (is_vertex_family(family_)) {
        per_anchor_ = static_cast<int>(dofs.size()) / 4;
        std::vector<MultiIndex> slots;
        for (int k = 0; k < per_anchor_; ++k) slots.push_back(dofs[k].deriv);
        for (std::size_t k = 0; k < dofs.size(); ++k) {
            local_.push_back({dofs[k].node, dofs[k].deriv, static_cast<int>(k) % per_anchor_});
        }
        for (int vy = 1; vy < n; ++vy) {
            for (int vx = 1; vx < n; ++vx) {
                for (int s = 0; s < per_anchor_; ++s) {
                    anchors_.push_back({2 * vx, 2 * vy});
                    derivs_.push_back(slots[s]);
                }
            }
        }
    } else {
        per_anchor_ = 1;
        for (const auto& d : dofs) local_.push_back({d.node, d.deriv, 0});
        for (int gy = 1; gy < 2 * n; ++gy) {
            for (int gx = 1; gx < 2 * n; ++gx) {
                anchors_.push_back({gx, gy});
                derivs_.push_back({0, 0});
            }
        }
    }
}

Point DofMap::anchor_point(Index g) const {
    const double h2 = 2.0 * mesh_.cells_per_axis();
    return {anchors_[g][0] / h2, anchors_[g][1] / h2};
}

Index DofMap::global_index(int i, int j, int k) const {
    const int n = mesh_.cells_per_axis();
    const LocalDof& d = local_[k];
    if (is_vertex_family(family_)) {
        const int vx = i + d.node[0] / 2;
        const int vy = j + d.node[1] / 2;
        if (vx <= 0 || vx >= n || vy <= 0 || vy >= n) return kEliminated;
        return (static_cast<Index>(vy - 1) * (n - 1) + (vx - 1)) * per_anchor_ + d.slot;
    }
    const int gx = 2 * i + d.node[0];
    const int gy = 2 * j + d.node[1];
    if (gx <= 0 || gx >= 2 * n || gy <= 0 || gy >= 2 * n) return kEliminated;
    return static_cast<Index>(gy - 1) * (2 * n - 1) + (gx - 1);
}

std::vector<Index> DofMap::cell_dofs(int i, int j) const {
    std::vector<Index> g(local_.size());
    for (std::size_t k = 0; k < local_.size(); ++k) g[k] = global_index(i, j, static_cast<int>(k));
    return g;
}

CsrMatrix assemble_stiffness(const ReferenceElement& elem, const DofMap& dofs) {
    if (elem.family() != dofs.family()) throw ConfigError("assemble_stiffness: family mismatch");
    const int n = dofs.mesh().cells_per_axis();
    const auto quad = QuadratureRule::tensor_gauss(elem.default_quadrature_points());
    const Eigen::MatrixXd k = local_stiffness(elem, dofs.mesh().cell_size(), quad);
    RowAccumulator acc(dofs.free_count());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const auto g = dofs.cell_dofs(i, j);
            acc.scatter(std::span<const Index>(g), k);
        }
    }
    return acc.finish();
}

CsrMatrix assemble_c0ip_edges(const ReferenceElement& elem, const DofMap& dofs, double eta,
                              EdgeTerms terms) {
    if (elem.family() != Family::c0ip || dofs.family() != Family::c0ip) {
        throw ConfigError("edge terms are defined for the c0ip element only");
    }
    if (!(eta > 0.0)) {
        throw ConfigError("penalty parameter eta must be positive, got " + std::to_string(eta));
    }
    const int n = dofs.mesh().cells_per_axis();
    const double h = dofs.mesh().cell_size();
    const int nl = elem.size();
    const GaussRule1D gauss = GaussRule1D::make(4);
    const bool with_consistency = terms != EdgeTerms::penalty;
    const bool with_penalty = terms != EdgeTerms::consistency;

    // Trace data of one side of an edge: the cell, which reference axis is
    // normal to the edge, the reference coordinate of the edge on that axis,
    // and the coefficients turning reference derivatives into the jump and
    // average of the form.
    struct Side {
        int i, j;
        int axis;
        double edge_coord;
        double jump_coeff;  // multiplies (2/h) d/d(axis)
        double avg_coeff;   // multiplies (2/h)^2 d^2/d(axis)^2
    };

    // Shape tables are cached per (axis, edge_coord, gauss point).
    auto table_key = [](int axis, double c) { return axis * 2 + (c > 0.0 ? 1 : 0); };
    std::vector<std::vector<ShapeTable>> tables(4);
    for (int axis = 0; axis < 2; ++axis) {
        for (double c : {-1.0, 1.0}) {
            auto& row = tables[table_key(axis, c)];
            for (double t : gauss.nodes) {
                const Point p = axis == 0 ? Point{c, t} : Point{t, c};
                row.push_back(elem.eval(p, 2));
            }
        }
    }

    RowAccumulator acc(dofs.free_count());
    std::vector<Index> g;
    Eigen::VectorXd jump, avg;
    Eigen::MatrixXd e;
    auto add_edge = [&](std::initializer_list<Side> sides) {
        const int len = nl * static_cast<int>(sides.size());
        g.clear();
        for (const Side& s : sides) {
            auto cd = dofs.cell_dofs(s.i, s.j);
            g.insert(g.end(), cd.begin(), cd.end());
        }
        e = Eigen::MatrixXd::Zero(len, len);
        jump.resize(len);
        avg.resize(len);
        for (std::size_t q = 0; q < gauss.nodes.size(); ++q) {
            int off = 0;
            for (const Side& s : sides) {
                const ShapeTable& t = tables[table_key(s.axis, s.edge_coord)][q];
                const MultiIndex d1 = s.axis == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1};
                const MultiIndex d2 = s.axis == 0 ? MultiIndex{2, 0} : MultiIndex{0, 2};
                for (int k = 0; k < nl; ++k) {
                    jump(off + k) = s.jump_coeff * (2.0 / h) * t(d1, k);
                    avg(off + k) = s.avg_coeff * (4.0 / (h * h)) * t(d2, k);
                }
                off += nl;
            }
            const double w = gauss.weights[q] * 0.5 * h;
            if (with_consistency) {
                e.noalias() += w * (jump * avg.transpose() + avg * jump.transpose());
            }
            if (with_penalty) e.noalias() += (w * eta / h) * jump * jump.transpose();
        }
        acc.scatter(std::span<const Index>(g), e);
    };

    // Vertical edges x = i/n, normal +x from T- = (i-1, j) to T+ = (i, j).
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (i == 0) {
                add_edge({{0, j, 0, -1.0, +1.0, 1.0}});  // outward -x: -(du/dn) = +du/dx
            } else if (i == n) {
                add_edge({{n - 1, j, 0, 1.0, -1.0, 1.0}});
            } else {
                add_edge({{i, j, 0, -1.0, +1.0, 0.5}, {i - 1, j, 0, 1.0, -1.0, 0.5}});
            }
        }
    }
    // Horizontal edges y = j/n, normal +y from (i, j-1) to (i, j).
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (j == 0) {
                add_edge({{i, 0, 1, -1.0, +1.0, 1.0}});
            } else if (j == n) {
                add_edge({{i, n - 1, 1, 1.0, -1.0, 1.0}});
            } else {
                add_edge({{i, j, 1, -1.0, +1.0, 0.5}, {i, j - 1, 1, 1.0, -1.0, 0.5}});
            }
        }
    }
    // Shared edge DOFs are scattered in row-dependent order.
    return linalg::symmetric_part(acc.finish());
}

CsrMatrix assemble_system(const ReferenceElement& elem, const DofMap& dofs, double eta) {
    CsrMatrix a = assemble_stiffness(elem, dofs);
    if (elem.family() == Family::c0ip) a = linalg::add(a, assemble_c0ip_edges(elem, dofs, eta));
    return a;
}

std::vector<double> assemble_load(const ReferenceElement& elem, const DofMap& dofs,
                                  const ScalarField& f) {
    const int n = dofs.mesh().cells_per_axis();
    const double h = dofs.mesh().cell_size();
    const auto quad = QuadratureRule::tensor_gauss(elem.default_quadrature_points());
    std::vector<double> b(dofs.free_count(), 0.0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd bl = local_load(elem, dofs.mesh().cell_origin(i, j), h, f, quad);
            const auto g = dofs.cell_dofs(i, j);
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (g[k] != kEliminated) b[g[k]] += bl(static_cast<Index>(k));
            }
        }
    }
    return b;
}

std::vector<double> interpolate(const DofMap& dofs, const DerivativeField& u) {
    const double half_h = 0.5 * dofs.mesh().cell_size();
    std::vector<double> v(dofs.free_count());
    for (Index g = 0; g < dofs.free_count(); ++g) {
        const MultiIndex d = dofs.deriv(g);
        v[g] = std::pow(half_h, d.order()) * u(dofs.anchor_point(g), d);
    }
    return v;
}

Eigen::VectorXd gather_cell(const DofMap& dofs, int i, int j, std::span<const double> u) {
    const auto g = dofs.cell_dofs(i, j);
    Eigen::VectorXd x(static_cast<Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) {
        x(static_cast<Index>(k)) = g[k] == kEliminated ? 0.0 : u[g[k]];
    }
    return x;
}

}  // namespace polyschwarz
