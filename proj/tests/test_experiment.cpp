#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polyschwarz/errors.hpp"
#include "polyschwarz/experiment.hpp"

using namespace polyschwarz;
using namespace polyschwarz::bench;
using nlohmann::json;

namespace {

std::string validation_message(const ExperimentConfig& c) {
    try {
        c.validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("polyschwarz_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small(Family f = Family::bfs, Level l = Level::two_level) {
    ExperimentConfig c;
    c.element = f;
    c.h_exponent = 4;
    c.H_exponent = 2;
    c.overlap_layers = 1;
    c.precond = l;
    return c;
}

}  // namespace

TEST_CASE("config validation names the violated constraint") {
    ExperimentConfig c = small();
    CHECK(validation_message(c).empty());
    c.h_exponent = 2;
    CHECK(validation_message(c).find("h must divide H") != std::string::npos);
    c = small();
    c.overlap_layers = 4;
    CHECK(validation_message(c).find("overlap") != std::string::npos);
    c.overlap_layers = 0;
    CHECK(validation_message(c).find("overlap") != std::string::npos);
    c = small();
    c.H_exponent = 0;
    CHECK(validation_message(c).find("H exponent") != std::string::npos);
    c = small();
    c.eta = 0.0;
    CHECK(validation_message(c).find("eta") != std::string::npos);
    c = small();
    c.tol = -1;
    CHECK(validation_message(c).find("tol") != std::string::npos);
    c = small();
    c.rhs = RhsKind::manufactured_m3;
    CHECK(validation_message(c).find("manufactured-m3") != std::string::npos);
    c = small(Family::jinwu);
    c.rhs = RhsKind::ones;
    c.check_error = true;
    CHECK(validation_message(c).find("check_error") != std::string::npos);
}

TEST_CASE("JSON round trip and strict keys") {
    const json j = {{"element", "c0ip"}, {"h_exp", 5}, {"H_exp", 2}, {"overlap_layers", 2},
                    {"precond", "one-level"}, {"tol", 1e-9}, {"rhs", "ones"}};
    const ExperimentConfig c = config_from_json(j);
    CHECK(c.element == Family::c0ip);
    CHECK(c.h_exponent == 5);
    CHECK(c.precond == Level::one_level);
    CHECK(c.eta == 5.0);
    CHECK(c.effective_rhs() == RhsKind::ones);
    const ExperimentConfig back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK_THROWS_AS(config_from_json(json{{"elemnt", "bfs"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"h_exp", "six"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"element", "argyris"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);
    CHECK(small(Family::jinwu).effective_rhs() == RhsKind::manufactured_m3);
    CHECK(parse_rhs("manufactured-m2") == RhsKind::manufactured_m2);
    CHECK_THROWS_AS(parse_rhs("zero"), ConfigError);
}

TEST_CASE("residual CSV format") {
    CHECK(residual_csv({1.0, 0.5}) == "iter,relres\n0,1\n1,0.5\n");
    CHECK(residual_csv({}) == "iter,relres\n");
}

TEST_CASE("run_experiment writes a deterministic summary") {
    const auto dir = scratch_dir("run");
    ExperimentConfig c = small(Family::adini);
    c.check_error = true;
    c.output = (dir / "a").string();
    const RunOutcome o = run_experiment(c);
    CHECK(o.report.converged);
    const json& s = o.summary;
    CHECK(s["element"] == "adini");
    CHECK(s["m"] == 2);
    CHECK(s["h"] == 1.0 / 16);
    CHECK(s["H"] == 0.25);
    CHECK(s["delta"] == 1.0 / 16);
    CHECK(s["subdomains"] == 16);
    CHECK(s["coarse_dim"] == 27);
    CHECK(s["eta"].is_null());
    CHECK(s["min_rz"].get<double>() > 0.0);
    CHECK(s["energy_error"].get<double>() > 0.0);
    CHECK(s["iterations"].get<int>() + 1 == static_cast<int>(o.report.relative_residuals.size()));
    CHECK(s["final_relres"].get<double>() <= c.tol);
    const std::string csv = read_file(dir / "a.residuals.csv");
    CHECK(csv.rfind("iter,relres\n0,1\n", 0) == 0);
    CHECK(json::parse(read_file(dir / "a.summary.json"))["iterations"] == s["iterations"]);

    c.output = (dir / "b").string();
    run_experiment(c);
    CHECK(read_file(dir / "b.residuals.csv") == csv);

    ExperimentConfig none = small(Family::bfs, Level::none);
    none.output = (dir / "n").string();
    const RunOutcome on = run_experiment(none);
    CHECK(on.summary["subdomains"] == 0);
    CHECK(on.summary["coarse_dim"] == 0);

    ExperimentConfig ip = small(Family::c0ip);
    ip.output = (dir / "ip").string();
    CHECK(run_experiment(ip, false).summary["eta"] == 5.0);

    ExperimentConfig bad = small();
    bad.overlap_layers = 9;
    CHECK_THROWS_AS(run_experiment(bad, false), ConfigError);
}

TEST_CASE("sweeps isolate failures and group scalability runs") {
    const auto dir = scratch_dir("sweep");
    const json spec_json = {
        {"output_dir", dir.string()},
        {"defaults", {{"element", "bfs"}, {"overlap_layers", 1}, {"H_exp", 1}}},
        {"runs",
         json::array({json{{"h_exp", 3}}, json{{"h_exp", 4}, {"H_exp", 2}}, json{{"h_exp", 2}},
                      json{{"h_exp", 3}, {"overlap_layers", 7}}, json{{"bogus", 1}},
                      json{{"h_exp", 3}, {"max_iters", 1}}})}};
    const SweepSpec spec = sweep_from_json(spec_json);
    REQUIRE(spec.runs.size() == 5);
    REQUIRE(spec.invalid.size() == 1);
    CHECK(spec.invalid[0].first == 4);
    CHECK(spec.runs[0].output == "run0");

    const SweepResult r = run_matrix(spec.runs, spec.output_dir);
    REQUIRE(r.rows.size() == 5);
    CHECK(r.rows[0]["status"] == "ok");
    CHECK(r.rows[1]["status"] == "ok");
    CHECK(r.rows[2]["status"] == "ok");
    CHECK(r.rows[3]["status"] == "failed");
    CHECK(r.rows[3]["error"].get<std::string>().find("overlap") != std::string::npos);
    CHECK(r.rows[4]["status"] == "not-converged");
    CHECK(r.failures == 2);
    CHECK(std::filesystem::exists(dir / "run0.summary.json"));

    // Runs 0, 1 and 4 share H/h = 4 and one layer; run 2 has H/h = 2.
    bool found = false;
    for (const auto& g : r.scalability) {
        if (g["H_over_h"] != 4 || g["overlap_layers"] != 1) continue;
        found = true;
        const auto& runs = g["runs"];
        REQUIRE(runs.size() == 3);
        for (std::size_t k = 1; k < runs.size(); ++k)
            CHECK(runs[k]["h"].get<double>() <= runs[k - 1]["h"].get<double>());
        CHECK(runs[0]["kappa_ratio_to_previous"].is_null());
    }
    CHECK(found);

    const SweepResult empty = run_matrix({}, dir);
    CHECK(empty.rows.empty());
    CHECK(empty.failures == 0);
    CHECK_THROWS_AS(sweep_from_json(json{{"output_dir", "x"}}), ConfigError);
    CHECK_THROWS_AS(sweep_from_json(json{{"runs", json::array()}, {"extra", 1}}), ConfigError);
}

TEST_CASE("overlap bound is not enforced without a preconditioner") {
    ExperimentConfig c = small(Family::bfs, Level::none);
    c.overlap_layers = 4;
    CHECK(validation_message(c).empty());
    const RunOutcome o = run_experiment(c, false);
    CHECK(o.report.relative_residuals.front() == 1.0);
    CHECK(o.summary["subdomains"] == 0);
    c.overlap_layers = 0;
    CHECK(validation_message(c).find("overlap") != std::string::npos);
}
