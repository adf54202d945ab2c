#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyschwarz/elements.hpp"
#include "polyschwarz/krylov.hpp"
#include "polyschwarz/schwarz.hpp"

namespace polyschwarz::bench {

enum class RhsKind { manufactured_m2, manufactured_m3, ones };

std::string_view to_string(RhsKind r);
RhsKind parse_rhs(std::string_view name);

/// One benchmark run: h = 2^-h_exponent, H = 2^-H_exponent, delta =
/// overlap_layers * h.
struct ExperimentConfig {
    Family element = Family::bfs;
    int h_exponent = 6;
    int H_exponent = 2;
    int overlap_layers = 4;
    double eta = 5.0;
    Level precond = Level::two_level;
    double tol = 1e-8;
    int max_iters = 2000;
    std::optional<RhsKind> rhs;  // defaults to the family's manufactured solution
    std::string output = "run";
    bool check_error = false;
    int threads = 1;

    RhsKind effective_rhs() const;
    int fine_cells() const { return 1 << h_exponent; }
    int coarse_cells() const { return 1 << H_exponent; }
    /// Throws ConfigError naming the violated constraint.
    void validate() const;
};

/// Fields present in `j` override those of `base`. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& c);

struct RunOutcome {
    nlohmann::json summary;
    PcgReport report;
    double setup_seconds = 0.0;
    double solve_seconds = 0.0;
    std::optional<double> energy_error;
};

/// Assembles, builds the preconditioner and runs PCG. When `write_files` is
/// set, writes `<output>.residuals.csv` and `<output>.summary.json`.
/// Validation errors and solver breakdowns propagate as exceptions.
RunOutcome run_experiment(const ExperimentConfig& config, bool write_files = true);

/// CSV text of a residual history (header `iter,relres`).
std::string residual_csv(const std::vector<double>& relres);

struct SweepResult {
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json scalability = nlohmann::json::array();
    int failures = 0;
};

/// Runs every config (relative output prefixes are placed in `output_dir`),
/// isolating failures per row, and groups runs with equal (element, H/h,
/// overlap layers) into a scalability table ordered by decreasing h.
SweepResult run_matrix(const std::vector<ExperimentConfig>& configs,
                       const std::filesystem::path& output_dir, int workers = 1);

/// Reads {"output_dir", "workers", "defaults", "runs": [...]}.
struct SweepSpec {
    std::filesystem::path output_dir = ".";
    int workers = 1;
    std::vector<ExperimentConfig> runs;
    /// Runs whose config failed to parse or validate: (index, message).
    std::vector<std::pair<int, std::string>> invalid;
};
SweepSpec sweep_from_json(const nlohmann::json& j);

}  // namespace polyschwarz::bench
