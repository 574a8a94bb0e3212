#include "qd/scenario.hpp"

#include "test_util.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <sstream>

using namespace qd;
using nlohmann::json;

TEST_CASE("minimal config gets the documented defaults") {
    const auto c = parse_config(json::parse(R"({"mode": "evolve"})"));
    CHECK(c.mode == Mode::Evolve);
    CHECK(c.params.cutoff == 5);
    CHECK(c.params.g == 1.0);
    CHECK(c.dt == doctest::Approx(0.02));
    CHECK(c.t_max == doctest::Approx(200.0));
    CHECK(c.format == OutputFormat::Csv);
}

TEST_CASE("config violations are all collected and name their fields") {
    try {
        parse_config(json::parse(
            R"({"mode": "bogus", "n_T": -1, "frobnicate": 3,
                "axes": [{"param": "n_T", "start": 2, "stop": 1, "count": 1}]})"));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.violations.size() >= 4);
        const std::string all = e.what();
        CHECK(all.find("n_T") != std::string::npos);
        CHECK(all.find("frobnicate") != std::string::npos);
        CHECK(all.find("mode") != std::string::npos);
        CHECK(all.find("count") != std::string::npos);
        CHECK(all.find("start") != std::string::npos);
    }
}

TEST_CASE("fig2 preset binds the caption parameters") {
    const auto c = preset_config("fig2");
    CHECK(c.mode == Mode::Evolve);
    CHECK(c.params.gamma == doctest::Approx(0.1));
    CHECK(c.params.kappa == doctest::Approx(1.5));
    CHECK(c.params.m_T == 0.0);
    REQUIRE(c.axes.size() == 1);
    CHECK(c.axes[0].param == "n_T");
}

TEST_CASE("all presets carry their caption parameters in the output header") {
    struct Expect { const char* name; double gamma; double kappa; };
    const Expect table[] = {
        {"fig2", 0.1, 1.5}, {"fig3a", 0.1, 0.0}, {"fig3c", 0.0, 2.0},
        {"fig4", 0.2, 0.1}, {"fig5a", 0.1, 0.0}, {"fig5c", 0.0, 0.1},
        {"fig6", 0.1, 1.0},
    };
    for (const auto& e : table) {
        const auto c = preset_config(e.name);
        CHECK(c.params.gamma == doctest::Approx(e.gamma));
        CHECK(c.params.kappa == doctest::Approx(e.kappa));
        CHECK(c.preset == e.name);
    }
    CHECK_THROWS_AS(preset_config("fig7"), ConfigError);
}

TEST_CASE("steady run emits one full row") {
    ScenarioConfig c;
    c.mode = Mode::Steady;
    c.params.gamma = 0.5;
    c.params.kappa = 0.5;
    c.params.n_T = 0.4;
    c.params.cutoff = 2;
    const auto result = run_scenario(c);
    REQUIRE(result.rows.size() == 1);
    const auto& row = result.rows[0];
    CHECK(row.error.empty());
    CHECK(row.values.at("residual") < 1e-9);
    CHECK(row.values.at("spectral_gap") > 1e-8);
    CHECK(row.values.at("discord") >= -1e-9);
    CHECK(result.meta.at("cutoff") == "2");
}

TEST_CASE("sweeps capture per-row errors instead of aborting") {
    ScenarioConfig c;
    c.mode = Mode::Sweep2D;
    c.params.g = 0.0;
    c.params.gamma = 1.0;
    c.params.n_T = 0.5;
    c.params.cutoff = 1;
    c.axes = {{"kappa", 0.0, 1.0, 2}};
    const auto result = run_scenario(c);
    REQUIRE(result.rows.size() == 2);
    // kappa = 0 leaves the decoupled cavity sector degenerate
    CHECK_FALSE(result.rows[0].error.empty());
    CHECK(result.rows[1].error.empty());
    CHECK(result.rows[1].values.at("kappa") == doctest::Approx(1.0));
}

TEST_CASE("sweep rows are ordered by axis values regardless of worker count") {
    ScenarioConfig c;
    c.mode = Mode::Sweep2D;
    c.params.gamma = 0.2;
    c.params.kappa = 0.5;
    c.params.cutoff = 1;
    c.axes = {{"n_T", 0.0, 1.0, 3}, {"m_T", 0.0, 0.5, 2}};
    c.workers = 4;
    const auto result = run_scenario(c);
    REQUIRE(result.rows.size() == 6);
    double prev = -1.0;
    for (const auto& row : result.rows) {
        const double key = row.values.at("n_T") * 10 + row.values.at("m_T");
        CHECK(key > prev);
        prev = key;
    }
}

TEST_CASE("identical configs produce byte-identical CSV output") {
    ScenarioConfig c;
    c.mode = Mode::Sweep2D;
    c.params.gamma = 0.3;
    c.params.kappa = 0.7;
    c.params.cutoff = 1;
    c.axes = {{"n_T", 0.0, 2.0, 3}};
    c.workers = 3;

    std::ostringstream a, b;
    write_csv(run_scenario(c), a);
    write_csv(run_scenario(c), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("# gamma = 3.00000000000e-01") != std::string::npos);
    CHECK(a.str().find("n_T,m_T,gamma,kappa,discord") != std::string::npos);
}

TEST_CASE("JSON output carries config and rows") {
    ScenarioConfig c;
    c.mode = Mode::Steady;
    c.params.gamma = 0.5;
    c.params.kappa = 0.5;
    c.params.cutoff = 1;
    c.format = OutputFormat::Json;
    std::ostringstream os;
    write_json(run_scenario(c), os);
    const auto doc = json::parse(os.str());
    CHECK(doc.contains("config"));
    CHECK(doc["config"]["mode"] == "steady");
    REQUIRE(doc["rows"].is_array());
    CHECK(doc["rows"][0].contains("discord"));
}

TEST_CASE("evolve mode emits a row per report step") {
    ScenarioConfig c;
    c.mode = Mode::Evolve;
    c.params.gamma = 0.2;
    c.params.kappa = 0.5;
    c.params.cutoff = 1;
    c.t_max = 1.0;
    c.dt = 0.1;
    c.report_dt = 0.5;
    c.axes = {{"n_T", 0.0, 1.0, 2}};
    const auto result = run_scenario(c);
    REQUIRE(result.rows.size() == 6);  // 3 report times x 2 axis points
    CHECK(result.rows[0].values.at("time") == 0.0);
    CHECK(result.rows[0].values.at("discord") == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("density matrix JSON round-trip") {
    const auto rho = qdtest::random_density({2, 3});
    const auto doc = density_matrix_to_json(rho);
    CHECK(doc["dims"] == std::vector<int>{2, 3});
    const auto back = density_matrix_from_json(doc);
    CHECK((back.rho - rho.rho).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("settling report scales inversely with the physical coupling") {
    ModelParams p;
    p.gamma = 1.0 / std::sqrt(20.0);
    p.kappa = 1.0 / std::sqrt(20.0);
    p.n_T = 0.7;
    p.cutoff = 2;
    const auto rep1 = settling_report(p, 1e8, 60.0, 0.05, 0.25);
    const auto rep2 = settling_report(p, 2e8, 60.0, 0.05, 0.25);
    REQUIRE(rep1.settled);
    REQUIRE(rep2.settled);
    CHECK(rep1.settle_dimensionless == doctest::Approx(rep2.settle_dimensionless));
    CHECK(rep1.settle_seconds == doctest::Approx(2.0 * rep2.settle_seconds));

    // a stationary series settles immediately
    ModelParams vac;
    vac.gamma = 0.1;
    vac.kappa = 0.5;
    vac.cutoff = 1;
    const auto rep0 = settling_report(vac, 1e8, 10.0, 0.1, 0.5);
    REQUIRE(rep0.settled);
    CHECK(rep0.settle_seconds == 0.0);
}
