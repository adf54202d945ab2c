// Experiment runner: single runs from flags or a flat JSON config, and
// sweeps over a list of configs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/experiment.hpp"

namespace {

using nlohmann::json;
using namespace polyschwarz;
using namespace polyschwarz::bench;

enum Exit { ok = 0, not_converged = 1, config_error = 2, run_error = 3 };

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

struct RunFlags {
    std::string config;
    std::string element, precond, rhs, output;
    int h_exp = 0, H_exp = 0, overlap = 0, max_iters = 0, threads = 0;
    double eta = 0.0, tol = 0.0;
    bool check_error = false;
};

void add_run_flags(CLI::App& app, RunFlags& f) {
    app.add_option("--config", f.config, "Flat JSON config; flags override its fields");
    app.add_option("--element", f.element, "bfs | adini | c0ip | jinwu");
    app.add_option("--h-exp", f.h_exp, "Fine mesh size h = 2^-a");
    app.add_option("--H-exp", f.H_exp, "Coarse mesh size H = 2^-b");
    app.add_option("--overlap-layers", f.overlap, "Overlap in fine-cell layers");
    app.add_option("--eta", f.eta, "Interior penalty parameter (c0ip)");
    app.add_option("--precond", f.precond, "none | one-level | two-level");
    app.add_option("--tol", f.tol, "Relative residual tolerance");
    app.add_option("--max-iters", f.max_iters, "Iteration limit");
    app.add_option("--rhs", f.rhs, "manufactured-m2 | manufactured-m3 | ones");
    app.add_option("--output", f.output, "Output path prefix");
    app.add_flag("--check-error", f.check_error, "Report the energy error to the interpolant");
    app.add_option("--threads", f.threads, "Threads for local factorizations and solves");
}

ExperimentConfig config_from_flags(const CLI::App& app, const RunFlags& f) {
    ExperimentConfig c;
    if (!f.config.empty()) c = config_from_json(read_json_file(f.config));
    json overrides = json::object();
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--element")) overrides["element"] = f.element;
    if (given("--h-exp")) overrides["h_exp"] = f.h_exp;
    if (given("--H-exp")) overrides["H_exp"] = f.H_exp;
    if (given("--overlap-layers")) overrides["overlap_layers"] = f.overlap;
    if (given("--eta")) overrides["eta"] = f.eta;
    if (given("--precond")) overrides["precond"] = f.precond;
    if (given("--tol")) overrides["tol"] = f.tol;
    if (given("--max-iters")) overrides["max_iters"] = f.max_iters;
    if (given("--rhs")) overrides["rhs"] = f.rhs;
    if (given("--output")) overrides["output"] = f.output;
    if (given("--check-error")) overrides["check_error"] = f.check_error;
    if (given("--threads")) overrides["threads"] = f.threads;
    return config_from_json(overrides, c);
}

int do_run(const CLI::App& app, const RunFlags& flags) {
    ExperimentConfig cfg;
    try {
        cfg = config_from_flags(app, flags);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return config_error;
    }
    try {
        const RunOutcome out = run_experiment(cfg, true);
        const auto& s = out.summary;
        std::printf("%s %s h=2^-%d H=2^-%d l=%d: dofs=%lld iterations=%d converged=%s "
                    "kappa_estimate=%.6g\n",
                    s["element"].get<std::string>().c_str(), s["precond"].get<std::string>().c_str(),
                    cfg.h_exponent, cfg.H_exponent, cfg.overlap_layers,
                    static_cast<long long>(s["dofs"].get<Index>()), out.report.iterations,
                    out.report.converged ? "true" : "false", out.report.kappa_estimate);
        if (out.energy_error) std::printf("energy_error=%.6e\n", *out.energy_error);
        return out.report.converged ? ok : not_converged;
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return run_error;
    }
}

int do_sweep(const std::string& path) {
    SweepSpec spec;
    try {
        spec = sweep_from_json(read_json_file(path));
    } catch (const std::exception& e) {
        std::cerr << "invalid sweep: " << e.what() << "\n";
        return config_error;
    }
    SweepResult result = run_matrix(spec.runs, spec.output_dir, spec.workers);

    // Runs rejected at parse time keep their position in the table.
    json rows = json::array();
    std::size_t next_valid = 0;
    std::size_t next_invalid = 0;
    const std::size_t total = spec.runs.size() + spec.invalid.size();
    for (std::size_t k = 0; k < total; ++k) {
        if (next_invalid < spec.invalid.size() &&
            spec.invalid[next_invalid].first == static_cast<int>(k)) {
            rows.push_back(json{{"run", k},
                                {"status", "failed"},
                                {"error", spec.invalid[next_invalid].second}});
            ++next_invalid;
            ++result.failures;
        } else {
            json row = result.rows[next_valid++];
            row["run"] = k;
            rows.push_back(std::move(row));
        }
    }
    const json table{{"rows", rows}, {"scalability", result.scalability},
                     {"failures", result.failures}};
    std::filesystem::create_directories(spec.output_dir);
    const auto out_path = spec.output_dir / "sweep.json";
    std::ofstream(out_path) << table.dump(2) << "\n";

    for (const auto& row : rows) {
        std::printf("run %d: %s", row["run"].get<int>(), row["status"].get<std::string>().c_str());
        if (row.contains("summary")) {
            std::printf(" iterations=%d kappa_estimate=%.6g",
                        row["summary"]["iterations"].get<int>(),
                        row["summary"]["kappa_estimate"].get<double>());
        }
        if (row.contains("error")) std::printf(" (%s)", row["error"].get<std::string>().c_str());
        std::printf("\n");
    }
    std::printf("%zu runs, %d failed; table written to %s\n", rows.size(), result.failures,
                out_path.string().c_str());
    return result.failures == 0 ? ok : run_error;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlapping Schwarz preconditioner benchmarks for 2m-th order problems"};
    RunFlags flags;
    add_run_flags(app, flags);

    std::string sweep_file;
    CLI::App* sweep = app.add_subcommand("sweep", "Run every config of a sweep file");
    sweep->add_option("file", sweep_file, "Sweep JSON: {output_dir, workers, defaults, runs}")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    if (sweep->parsed()) return do_sweep(sweep_file);
    return do_run(app, flags);
}
