#include "polyschwarz/schwarz.hpp"

#include <algorithm>
#include <string>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/parallel.hpp"

namespace polyschwarz {

std::string_view to_string(Level l) {
    switch (l) {
        case Level::none: return "none";
        case Level::one_level: return "one-level";
        case Level::two_level: return "two-level";
    }
    return "unknown";
}

Level parse_level(std::string_view name) {
    if (name == "none") return Level::none;
    if (name == "one-level") return Level::one_level;
    if (name == "two-level") return Level::two_level;
    throw ConfigError("unknown preconditioner '" + std::string(name) +
                      "' (expected none, one-level or two-level)");
}

std::vector<LocalSpace> build_local_spaces(const Decomposition& decomposition,
                                           const DofMap& dofs, const CsrMatrix& a,
                                           int threads) {
    if (decomposition.fine().cells_per_axis() != dofs.mesh().cells_per_axis()) {
        throw ConfigError("decomposition and dof map use different fine meshes");
    }
    if (a.rows() != dofs.free_count()) throw DimensionError("A does not match the dof map");
    const int count = decomposition.num_subdomains();
    std::vector<LocalSpace> spaces(count);
    for (int k = 0; k < count; ++k) {
        const CellBox& box = decomposition.subdomain(k);
        spaces[k].subdomain = k;
        for (Index g = 0; g < dofs.free_count(); ++g) {
            const auto [hx, hy] = dofs.anchor(g);
            if (box.contains_lattice_point_strictly(hx, hy)) spaces[k].dofs.push_back(g);
        }
        if (spaces[k].dofs.empty()) {
            throw ConfigError("subdomain " + std::to_string(k) + " contains no free DOF");
        }
    }
    parallel_for(count, threads, [&](int k) {
        spaces[k].factor = linalg::SpdFactorization(a.principal_submatrix(spaces[k].dofs));
    });
    return spaces;
}

Preconditioner Preconditioner::identity(Index n) {
    Preconditioner p;
    p.level_ = Level::none;
    p.n_ = n;
    return p;
}

Preconditioner::Preconditioner(Level level, Index n, std::vector<LocalSpace> locals,
                               std::shared_ptr<const CoarseSpace> coarse, int threads)
    : level_(level), n_(n), locals_(std::move(locals)), coarse_(std::move(coarse)) {
    set_threads(threads);
    if (level_ == Level::two_level && !coarse_) {
        throw ConfigError("two-level preconditioner needs a coarse space");
    }
    if (level_ != Level::none && locals_.empty()) {
        throw ConfigError("Schwarz preconditioner needs at least one local space");
    }
    for (const auto& s : locals_) {
        if (!s.dofs.empty() && s.dofs.back() >= n_) {
            throw DimensionError("local space index exceeds the global dimension");
        }
    }
    if (coarse_ && coarse_->prolongation().rows() != n_) {
        throw DimensionError("coarse prolongation does not match the global dimension");
    }
}

void Preconditioner::apply_subset(std::span<const int> subset, bool with_coarse,
                                  std::span<const double> r, std::span<double> z) const {
    if (static_cast<Index>(r.size()) != n_ || static_cast<Index>(z.size()) != n_) {
        throw DimensionError("Preconditioner::apply: expected vectors of length " +
                             std::to_string(n_));
    }
    if (level_ == Level::none) {
        std::copy(r.begin(), r.end(), z.begin());
        return;
    }
    // Local solves are independent; their results are merged below in a
    // fixed order so z does not depend on the thread count.
    const int count = static_cast<int>(subset.size());
    std::vector<std::vector<double>> local(count);
    parallel_for(count, threads_, [&](int s) {
        const LocalSpace& space = locals_.at(subset[s]);
        std::vector<double> rk(space.dofs.size());
        for (std::size_t p = 0; p < rk.size(); ++p) rk[p] = r[space.dofs[p]];
        local[s] = space.factor.solve(rk);
    });
    std::fill(z.begin(), z.end(), 0.0);
    if (with_coarse && level_ == Level::two_level) coarse_->apply_add(r, z);
    for (int s = 0; s < count; ++s) {
        const auto& dofs = locals_[subset[s]].dofs;
        for (std::size_t p = 0; p < dofs.size(); ++p) z[dofs[p]] += local[s][p];
    }
}

void Preconditioner::apply(std::span<const double> r, std::span<double> z) const {
    std::vector<int> all(locals_.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
    apply_subset(all, true, r, z);
}

std::vector<double> Preconditioner::apply(std::span<const double> r) const {
    std::vector<double> z(r.size());
    apply(r, z);
    return z;
}

Preconditioner build_preconditioner(Level level, const Decomposition& decomposition,
                                    const DofMap& dofs, const CsrMatrix& a, int threads,
                                    const CoarseOptions& coarse_opts) {
    if (level == Level::none) return Preconditioner::identity(a.rows());
    auto locals = build_local_spaces(decomposition, dofs, a, threads);
    std::shared_ptr<const CoarseSpace> coarse;
    if (level == Level::two_level) {
        coarse = std::make_shared<const CoarseSpace>(decomposition.coarse(),
                                                     order_of(dofs.family()), dofs, a, coarse_opts);
    }
    return Preconditioner(level, a.rows(), std::move(locals), std::move(coarse), threads);
}

}  // namespace polyschwarz
