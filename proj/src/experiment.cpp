#include "polyschwarz/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <tuple>

#include "polyschwarz/assembly.hpp"
#include "polyschwarz/errors.hpp"
#include "polyschwarz/manufactured.hpp"
#include "polyschwarz/parallel.hpp"

namespace polyschwarz::bench {

using nlohmann::json;

std::string_view to_string(RhsKind r) {
    switch (r) {
        case RhsKind::manufactured_m2: return "manufactured-m2";
        case RhsKind::manufactured_m3: return "manufactured-m3";
        case RhsKind::ones: return "ones";
    }
    return "unknown";
}

RhsKind parse_rhs(std::string_view name) {
    if (name == "manufactured-m2") return RhsKind::manufactured_m2;
    if (name == "manufactured-m3") return RhsKind::manufactured_m3;
    if (name == "ones") return RhsKind::ones;
    throw ConfigError("unknown rhs '" + std::string(name) +
                      "' (expected manufactured-m2, manufactured-m3 or ones)");
}

RhsKind ExperimentConfig::effective_rhs() const {
    if (rhs) return *rhs;
    return order_of(element) == 3 ? RhsKind::manufactured_m3 : RhsKind::manufactured_m2;
}

void ExperimentConfig::validate() const {
    const int m = order_of(element);
    const RhsKind r = effective_rhs();
    if (r == RhsKind::manufactured_m3 && m != 3) {
        throw ConfigError("rhs manufactured-m3 requires a sixth-order element (jinwu)");
    }
    if (r == RhsKind::manufactured_m2 && m != 2) {
        throw ConfigError("rhs manufactured-m2 requires a fourth-order element, not " +
                          std::string(polyschwarz::to_string(element)));
    }
    if (H_exponent < 1) throw ConfigError("H exponent must be a positive integer (H <= 1/2)");
    if (h_exponent <= H_exponent) {
        throw ConfigError("h must divide H: need h exponent > H exponent (got " +
                          std::to_string(h_exponent) + " <= " + std::to_string(H_exponent) + ")");
    }
    if (h_exponent > 14) throw ConfigError("h exponent above 14 is not supported");
    const int ratio = 1 << (h_exponent - H_exponent);
    if (overlap_layers < 1 || (precond != Level::none && overlap_layers >= ratio)) {
        throw ConfigError("overlap must satisfy 1 <= l and l*h < H: l = " +
                          std::to_string(overlap_layers) + ", H/h = " + std::to_string(ratio));
    }
    if (!(eta > 0.0)) throw ConfigError("eta must be positive");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (output.empty()) throw ConfigError("output prefix must not be empty");
    if (check_error && r == RhsKind::ones) {
        throw ConfigError("check_error needs a manufactured rhs");
    }
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "element") c.element = parse_family(value.get<std::string>());
            else if (key == "h_exp") c.h_exponent = value.get<int>();
            else if (key == "H_exp") c.H_exponent = value.get<int>();
            else if (key == "overlap_layers") c.overlap_layers = value.get<int>();
            else if (key == "eta") c.eta = value.get<double>();
            else if (key == "precond") c.precond = parse_level(value.get<std::string>());
            else if (key == "tol") c.tol = value.get<double>();
            else if (key == "max_iters") c.max_iters = value.get<int>();
            else if (key == "rhs") c.rhs = parse_rhs(value.get<std::string>());
            else if (key == "output") c.output = value.get<std::string>();
            else if (key == "check_error") c.check_error = value.get<bool>();
            else if (key == "threads") c.threads = value.get<int>();
            else throw ConfigError("unknown config key '" + key + "'");
        } catch (const json::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
    return c;
}

json to_json(const ExperimentConfig& c) {
    return json{{"element", polyschwarz::to_string(c.element)},
                {"h_exp", c.h_exponent},
                {"H_exp", c.H_exponent},
                {"overlap_layers", c.overlap_layers},
                {"eta", c.eta},
                {"precond", polyschwarz::to_string(c.precond)},
                {"tol", c.tol},
                {"max_iters", c.max_iters},
                {"rhs", to_string(c.effective_rhs())},
                {"output", c.output},
                {"check_error", c.check_error},
                {"threads", c.threads}};
}

std::string residual_csv(const std::vector<double>& relres) {
    std::string out = "iter,relres\n";
    char buf[64];
    for (std::size_t i = 0; i < relres.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, relres[i]);
        out += buf;
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, bool write_files) {
    cfg.validate();
    const int m = order_of(cfg.element);
    const CartesianMesh fine(cfg.fine_cells());
    const CartesianMesh coarse(cfg.coarse_cells());
    const ReferenceElement elem = build_element(cfg.element);
    const DofMap dofs(fine, elem);
    const CsrMatrix a = assemble_system(elem, dofs, cfg.eta);

    const RhsKind rhs_kind = cfg.effective_rhs();
    std::unique_ptr<ManufacturedSolution> exact;
    if (rhs_kind != RhsKind::ones) exact = std::make_unique<ManufacturedSolution>(m);
    const std::vector<double> f =
        exact ? assemble_load(elem, dofs, [&](Point p) { return exact->rhs(p); })
              : assemble_load(elem, dofs, [](Point) { return 1.0; });

    RunOutcome out;
    auto t0 = Clock::now();
    const Preconditioner prec =
        cfg.precond == Level::none
            ? Preconditioner::identity(dofs.free_count())
            : build_preconditioner(cfg.precond, Decomposition(coarse, fine, cfg.overlap_layers),
                                   dofs, a, cfg.threads);
    out.setup_seconds = seconds_since(t0);

    t0 = Clock::now();
    out.report = pcg(a, prec, f, {.tol = cfg.tol, .max_iters = cfg.max_iters});
    out.solve_seconds = seconds_since(t0);

    if (cfg.check_error) {
        const auto ui = interpolate(dofs, [&](Point p, MultiIndex d) {
            return exact->derivative(p, d);
        });
        std::vector<double> e(ui.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = out.report.solution[i] - ui[i];
        out.energy_error = std::sqrt(std::max(0.0, linalg::dot(e, a.multiply(e))));
    }

    const double h = fine.cell_size();
    const double H = coarse.cell_size();
    json s;
    s["element"] = polyschwarz::to_string(cfg.element);
    s["m"] = m;
    s["h"] = h;
    s["H"] = H;
    s["delta"] = cfg.overlap_layers * h;
    s["overlap_layers"] = cfg.overlap_layers;
    s["eta"] = cfg.element == Family::c0ip ? json(cfg.eta) : json(nullptr);
    s["precond"] = polyschwarz::to_string(cfg.precond);
    s["rhs"] = to_string(rhs_kind);
    s["tol"] = cfg.tol;
    s["dofs"] = dofs.free_count();
    s["subdomains"] = prec.num_local_spaces();
    s["coarse_dim"] = prec.coarse() ? prec.coarse()->dimension() : 0;
    s["iterations"] = out.report.iterations;
    s["converged"] = out.report.converged;
    s["final_relres"] = out.report.relative_residuals.back();
    s["kappa_estimate"] = out.report.kappa_estimate;
    s["lambda_min_estimate"] = out.report.lambda_min;
    s["lambda_max_estimate"] = out.report.lambda_max;
    s["min_rz"] = out.report.min_rz;
    s["setup_seconds"] = out.setup_seconds;
    s["solve_seconds"] = out.solve_seconds;
    if (out.energy_error) s["energy_error"] = *out.energy_error;
    out.summary = std::move(s);

    if (write_files) {
        write_text(cfg.output + ".residuals.csv", residual_csv(out.report.relative_residuals));
        write_text(cfg.output + ".summary.json", out.summary.dump(2) + "\n");
    }
    return out;
}

SweepResult run_matrix(const std::vector<ExperimentConfig>& configs,
                       const std::filesystem::path& output_dir, int workers) {
    SweepResult result;
    const int count = static_cast<int>(configs.size());
    std::vector<json> rows(count);
    // Runs are independent; rows land in per-run slots.
    parallel_for(count, workers, [&](int k) {
        ExperimentConfig cfg = configs[k];
        if (std::filesystem::path(cfg.output).is_relative()) {
            cfg.output = (output_dir / cfg.output).string();
        }
        json row;
        row["run"] = k;
        row["config"] = to_json(cfg);
        try {
            const RunOutcome o = run_experiment(cfg, true);
            row["status"] = o.report.converged ? "ok" : "not-converged";
            row["summary"] = o.summary;
        } catch (const std::exception& e) {
            row["status"] = "failed";
            row["error"] = e.what();
        }
        rows[k] = std::move(row);
    });

    // (element, H/h, layers) -> rows ordered by decreasing h.
    std::map<std::tuple<std::string, int, int>, std::vector<const json*>> groups;
    for (const auto& row : rows) {
        if (row["status"] != "ok") ++result.failures;
        if (!row.contains("summary")) continue;
        const auto& c = row["config"];
        const int ratio = 1 << (c["h_exp"].get<int>() - c["H_exp"].get<int>());
        groups[{c["element"].get<std::string>(), ratio, c["overlap_layers"].get<int>()}].push_back(
            &row);
    }
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const json* x, const json* y) {
            return (*x)["summary"]["h"].get<double>() > (*y)["summary"]["h"].get<double>();
        });
        json entries = json::array();
        double prev = 0.0;
        for (const json* r : members) {
            const auto& s = (*r)["summary"];
            json e{{"run", (*r)["run"]},
                   {"precond", s["precond"]},
                   {"h", s["h"]},
                   {"H", s["H"]},
                   {"iterations", s["iterations"]},
                   {"kappa_estimate", s["kappa_estimate"]}};
            const double kappa = s["kappa_estimate"].get<double>();
            e["kappa_ratio_to_previous"] = prev > 0.0 ? json(kappa / prev) : json(nullptr);
            prev = kappa;
            entries.push_back(std::move(e));
        }
        result.scalability.push_back(json{{"element", std::get<0>(key)},
                                          {"H_over_h", std::get<1>(key)},
                                          {"overlap_layers", std::get<2>(key)},
                                          {"runs", std::move(entries)}});
    }
    result.rows = json(std::move(rows));
    return result;
}

SweepSpec sweep_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("sweep file must be a JSON object");
    SweepSpec spec;
    ExperimentConfig defaults;
    for (const auto& [key, value] : j.items()) {
        if (key == "output_dir") spec.output_dir = value.get<std::string>();
        else if (key == "workers") spec.workers = value.get<int>();
        else if (key == "defaults") defaults = config_from_json(value, defaults);
        else if (key != "runs") throw ConfigError("unknown sweep key '" + key + "'");
    }
    if (!j.contains("runs") || !j["runs"].is_array()) {
        throw ConfigError("sweep file needs a 'runs' array");
    }
    int index = 0;
    for (const auto& r : j["runs"]) {
        try {
            ExperimentConfig c = config_from_json(r, defaults);
            if (!r.contains("output")) c.output = "run" + std::to_string(index);
            spec.runs.push_back(std::move(c));
        } catch (const ConfigError& e) {
            spec.invalid.emplace_back(index, e.what());
        }
        ++index;
    }
    return spec;
}

}  // namespace polyschwarz::bench
