#pragma once

#include "qd/dynamics.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <map>
#include <string>

namespace qd {

enum class Mode { Evolve, Steady, Sweep2D, FigurePreset };
enum class OutputFormat { Csv, Json };

struct SweepAxis {
    std::string param;  // n_T, m_T, gamma, kappa, or nm_T (tied n_T = m_T)
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct ScenarioConfig {
    Mode mode = Mode::Steady;
    ModelParams params;
    std::vector<SweepAxis> axes;   // up to two
    double t_max = 200.0;          // units of 1/g
    double dt = 0.02;
    double report_dt = 0.5;        // row cadence for evolve mode
    std::string output_path;       // empty: stdout
    OutputFormat format = OutputFormat::Csv;
    std::string preset;            // nonempty for figure presets
    int workers = 0;               // 0: hardware concurrency
};

// Collects every violated constraint rather than stopping at the first.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> violations);
    std::vector<std::string> violations;
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::string& path);

// fig2, fig3a-fig3d, fig4, fig5a-fig5d, fig6: caption parameters bound exactly.
ScenarioConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

struct ResultRow {
    std::map<std::string, double> values;
    std::string error;  // nonempty when the solve for this row failed
};

struct ResultSet {
    std::vector<std::string> columns;
    std::vector<ResultRow> rows;
    std::map<std::string, std::string> meta;  // resolved config, key = value
};

ResultSet run_scenario(const ScenarioConfig& config);

void write_csv(const ResultSet& result, std::ostream& os);
void write_json(const ResultSet& result, std::ostream& os);
void write_result(const ResultSet& result, const ScenarioConfig& config);

nlohmann::json density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const nlohmann::json& doc);

struct SettlingReport {
    double settle_dimensionless = 0.0;  // units of 1/g
    double settle_seconds = 0.0;
    double plateau = 0.0;               // discord plateau, bits
    bool settled = false;
};

// physical_g in rad/s; the discord series is evolved in 1/g units and the
// settling time (tolerance 1% of the plateau) converted to seconds.
SettlingReport settling_report(const ModelParams& params, double physical_g,
                               double t_max = 200.0, double dt = 0.02,
                               double report_dt = 0.2);

}  // namespace qd
