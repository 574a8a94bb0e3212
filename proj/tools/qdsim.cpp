// Command-line driver for the noisy-cavity discord simulator.
//
// Exit codes: 0 success, 1 configuration error, 2 solver error, 3 not settled.

#include "qd/correlations.hpp"
#include "qd/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitNotSettled = 3;

struct CommonFlags {
    std::string config_path;
    json overrides = json::object();

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON configuration file; flags override it");
        auto num = [this, app](const char* flag, const char* key, const char* help) {
            app->add_option_function<double>(
                flag, [this, key](double v) { overrides[key] = v; }, help);
        };
        num("--g", "g", "atom-cavity coupling (global unit, default 1)");
        num("--gamma", "gamma", "atomic half-linewidth in units of g");
        num("--kappa", "kappa", "cavity half-linewidth in units of g");
        num("--n_T", "n_T", "atomic white-noise intensity");
        num("--m_T", "m_T", "cavity white-noise intensity");
        num("--t_max", "t_max", "evolution span in units of 1/g");
        num("--dt", "dt", "propagator step in units of 1/g");
        num("--report_dt", "report_dt", "row cadence for evolve mode");
        app->add_option_function<int>(
            "--cutoff", [this](int v) { overrides["cutoff"] = v; },
            "maximum intracavity photon number");
        app->add_option_function<int>(
            "--workers", [this](int v) { overrides["workers"] = v; },
            "sweep worker threads (0: hardware)");
        app->add_option_function<std::string>(
            "--output,-o", [this](std::string v) { overrides["output"] = v; },
            "output file (default stdout)");
        app->add_option_function<std::string>(
            "--format", [this](std::string v) { overrides["format"] = v; },
            "csv or json");
        app->add_option_function<std::string>(
            "--axis", [this](std::string v) { axis_specs.push_back(v); },
            "sweep axis as param,start,stop,count (repeatable, max twice)")
            ->take_all();
    }

    std::vector<std::string> axis_specs;

    qd::ScenarioConfig resolve(const std::string& mode) {
        json doc = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw qd::ConfigError({"cannot open config file: " + config_path});
            try {
                in >> doc;
            } catch (const json::parse_error& e) {
                throw qd::ConfigError({std::string("config parse error: ") + e.what()});
            }
        }
        for (const auto& [k, v] : overrides.items()) doc[k] = v;
        if (!axis_specs.empty()) {
            json axes = json::array();
            for (const auto& spec : axis_specs) {
                json ax = json::object();
                double start = 0, stop = 0;
                int count = 0;
                char param[32] = {0};
                if (std::sscanf(spec.c_str(), "%31[^,],%lf,%lf,%d",
                                param, &start, &stop, &count) != 4) {
                    throw qd::ConfigError({"--axis: expected param,start,stop,count, got " + spec});
                }
                ax["param"] = param;
                ax["start"] = start;
                ax["stop"] = stop;
                ax["count"] = count;
                axes.push_back(std::move(ax));
            }
            doc["axes"] = std::move(axes);
        }
        if (!mode.empty()) doc["mode"] = mode;
        return qd::parse_config(doc);
    }
};

// Sweeps keep per-row errors in the output; a failed single-point run is a
// solver error.
int finish(const qd::ResultSet& result, const qd::ScenarioConfig& config) {
    qd::write_result(result, config);
    if (config.mode != qd::Mode::Sweep2D) {
        for (const auto& row : result.rows) {
            if (!row.error.empty()) {
                std::cerr << "error: " << row.error << "\n";
                return kExitSolver;
            }
        }
    }
    return kExitOk;
}

int run_and_write(const qd::ScenarioConfig& config) {
    return finish(qd::run_scenario(config), config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative two-atom cavity simulator: quantum discord under white-noise driving"};
    app.require_subcommand(1);

    CommonFlags evolve_flags, steady_flags, sweep_flags, preset_flags;
    CommonFlags audit_flags, settle_flags;

    auto* cmd_evolve = app.add_subcommand("evolve", "time evolution from |g g 0>");
    evolve_flags.attach(cmd_evolve);

    auto* cmd_steady = app.add_subcommand("steady", "steady state at one parameter point");
    steady_flags.attach(cmd_steady);
    std::string dump_state_path;
    cmd_steady->add_option("--dump-state", dump_state_path,
                           "write the steady density matrix as JSON to this path");

    auto* cmd_sweep = app.add_subcommand("sweep", "steady-state sweep over one or two axes");
    sweep_flags.attach(cmd_sweep);

    auto* cmd_preset = app.add_subcommand("preset", "run a figure preset");
    std::string preset_name;
    cmd_preset->add_option("name", preset_name, "one of fig2 fig3a-fig3d fig4 fig5a-fig5d fig6")
        ->required();
    preset_flags.attach(cmd_preset);

    auto* cmd_audit = app.add_subcommand("audit-cutoff", "minimal sufficient Fock cutoff");
    audit_flags.attach(cmd_audit);
    std::string observable = "discord";
    double audit_tol = 1e-4;
    cmd_audit->add_option("--observable", observable, "discord or photon_number");
    cmd_audit->add_option("--tol", audit_tol, "convergence tolerance between cutoff c and c+2");

    auto* cmd_settle = app.add_subcommand("settling-report",
                                          "discord settling time in physical units");
    settle_flags.attach(cmd_settle);
    double physical_g = 2.0 * M_PI * 1e8;
    cmd_settle->add_option("--physical-g", physical_g, "coupling g in rad/s");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_evolve->parsed()) {
            return run_and_write(evolve_flags.resolve("evolve"));
        }
        if (cmd_steady->parsed()) {
            auto config = steady_flags.resolve("steady");
            const int code = finish(qd::run_scenario(config), config);
            if (code != kExitOk) return code;
            if (!dump_state_path.empty()) {
                const auto ss = qd::steady_state(config.params);
                std::ofstream out(dump_state_path);
                if (!out) throw std::runtime_error("cannot open " + dump_state_path);
                out << qd::density_matrix_to_json(ss.state).dump(2) << "\n";
            }
            return kExitOk;
        }
        if (cmd_sweep->parsed()) {
            return run_and_write(sweep_flags.resolve("sweep2d"));
        }
        if (cmd_preset->parsed()) {
            preset_flags.overrides["preset"] = preset_name;
            return run_and_write(preset_flags.resolve(""));
        }
        if (cmd_audit->parsed()) {
            auto config = audit_flags.resolve("steady");
            qd::Observable obs;
            if (observable == "discord") obs = qd::Observable::Discord;
            else if (observable == "photon_number") obs = qd::Observable::PhotonNumber;
            else throw qd::ConfigError({"--observable: expected discord or photon_number"});
            const int c = qd::cutoff_audit(config.params, obs, audit_tol);
            std::cout << "minimal sufficient cutoff: " << c << "\n";
            return kExitOk;
        }
        if (cmd_settle->parsed()) {
            auto config = settle_flags.resolve("evolve");
            const double product = config.params.gamma * config.params.kappa;
            if (std::abs(product - 0.05) > 1e-6) {
                throw qd::ConfigError(
                    {"settling-report: gamma*kappa must equal 1/20 (in units of g^2)"});
            }
            const auto rep = qd::settling_report(config.params, physical_g,
                                                 config.t_max, config.dt,
                                                 config.report_dt);
            if (!rep.settled) {
                std::cerr << "discord series did not settle within t_max\n";
                return kExitNotSettled;
            }
            std::cout << "plateau_discord_bits = " << rep.plateau << "\n"
                      << "settle_time_over_g = " << rep.settle_dimensionless << "\n"
                      << "settle_time_seconds = " << rep.settle_seconds << "\n";
            return kExitOk;
        }
    } catch (const qd::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitConfig;
}
