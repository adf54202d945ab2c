#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "polyschwarz/assembly.hpp"
#include "polyschwarz/coarse.hpp"
#include "polyschwarz/geometry.hpp"
#include "polyschwarz/linalg/cholesky.hpp"

namespace polyschwarz {

enum class Level { none, one_level, two_level };

std::string_view to_string(Level l);
/// Accepts "none", "one-level", "two-level".
Level parse_level(std::string_view name);

/// Free fine DOFs whose anchor lies in the open subdomain box, with the
/// factorized principal submatrix A_k = A(dofs, dofs).
struct LocalSpace {
    int subdomain = 0;
    std::vector<Index> dofs;
    linalg::SpdFactorization factor;
};

/// Throws ConfigError if a subdomain has no interior DOF.
std::vector<LocalSpace> build_local_spaces(const Decomposition& decomposition,
                                           const DofMap& dofs, const CsrMatrix& a,
                                           int threads = 1);

/// Additive Schwarz operator M^{-1} = sum_k R_k^T A_k^{-1} R_k; the coarse
/// term k = 0 is present in two-level mode only, and none-mode is the
/// identity. Immutable once built; apply() may be called concurrently.
class Preconditioner {
public:
    static Preconditioner identity(Index n);
    Preconditioner(Level level, Index n, std::vector<LocalSpace> locals,
                   std::shared_ptr<const CoarseSpace> coarse = nullptr, int threads = 1);

    Level level() const noexcept { return level_; }
    Index dimension() const noexcept { return n_; }
    int num_local_spaces() const noexcept { return static_cast<int>(locals_.size()); }
    const std::vector<LocalSpace>& local_spaces() const noexcept { return locals_; }
    const CoarseSpace* coarse() const noexcept { return coarse_.get(); }

    /// z = M^{-1} r
    void apply(std::span<const double> r, std::span<double> z) const;
    std::vector<double> apply(std::span<const double> r) const;

    /// Partial sum over the listed local spaces, plus the coarse term when
    /// `with_coarse` is set (two-level only).
    void apply_subset(std::span<const int> subset, bool with_coarse, std::span<const double> r,
                      std::span<double> z) const;

    void set_threads(int threads) noexcept { threads_ = threads < 1 ? 1 : threads; }

private:
    Preconditioner() = default;

    Level level_ = Level::none;
    Index n_ = 0;
    std::vector<LocalSpace> locals_;
    std::shared_ptr<const CoarseSpace> coarse_;
    int threads_ = 1;
};

/// Convenience setup: local spaces (one- and two-level) and the coarse space
/// (two-level) for an assembled system.
Preconditioner build_preconditioner(Level level, const Decomposition& decomposition,
                                    const DofMap& dofs, const CsrMatrix& a, int threads = 1,
                                    const CoarseOptions& coarse_opts = {});

}  // namespace polyschwarz
