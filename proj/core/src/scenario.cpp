#include "qd/scenario.hpp"

#include "qd/correlations.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace qd {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Evolve: return "evolve";
        case Mode::Steady: return "steady";
        case Mode::Sweep2D: return "sweep2d";
        case Mode::FigurePreset: return "figure-preset";
    }
    return "?";
}

const std::set<std::string> kAxisParams{"n_T", "m_T", "gamma", "kappa", "nm_T"};

void set_param(ModelParams& p, const std::string& name, double value) {
    if (name == "n_T") p.n_T = value;
    else if (name == "m_T") p.m_T = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "kappa") p.kappa = value;
    else if (name == "nm_T") { p.n_T = value; p.m_T = value; }
    else throw std::invalid_argument("unknown sweep parameter: " + name);
}

std::vector<double> linspace(const SweepAxis& ax) {
    std::vector<double> v(ax.count);
    for (int i = 0; i < ax.count; ++i) {
        v[i] = ax.start + (ax.stop - ax.start) * i / (ax.count - 1);
    }
    return v;
}

void fill_report_columns(ResultRow& row, const CorrelationReport& rep) {
    row.values["discord"] = rep.discord;
    row.values["classical_correlation"] = rep.classical_correlation;
    row.values["mutual_information"] = rep.mutual_information;
    row.values["concurrence"] = rep.concurrence;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error("invalid configuration:\n  " + [&] {
          std::string s;
          for (size_t i = 0; i < v.size(); ++i) {
              if (i) s += "\n  ";
              s += v[i];
          }
          return s;
      }()),
      violations(std::move(v)) {}

std::vector<std::string> preset_names() {
    return {"fig2", "fig3a", "fig3b", "fig3c", "fig3d",
            "fig4", "fig5a", "fig5b", "fig5c", "fig5d", "fig6"};
}

ScenarioConfig preset_config(const std::string& name) {
    ScenarioConfig c;
    c.preset = name;
    const SweepAxis intensity{"", 0.0, 5.0, 26};
    const SweepAxis rate{"", 0.05, 3.0, 30};
    auto intens = [&](const std::string& p) { SweepAxis a = intensity; a.param = p; return a; };
    auto rates = [&](const std::string& p) { SweepAxis a = rate; a.param = p; return a; };

    if (name == "fig2") {
        c.mode = Mode::Evolve;
        c.params.gamma = 0.1; c.params.kappa = 1.5;
        c.axes = {intens("n_T")};
    } else if (name == "fig3a" || name == "fig3b") {
        c.mode = Mode::Sweep2D;
        c.params.gamma = 0.1;
        c.axes = {intens("n_T"), rates("kappa")};
    } else if (name == "fig3c" || name == "fig3d") {
        c.mode = Mode::Sweep2D;
        c.params.kappa = 2.0;
        c.axes = {intens("n_T"), rates("gamma")};
    } else if (name == "fig4") {
        c.mode = Mode::Evolve;
        c.params.kappa = 0.1; c.params.gamma = 0.2;
        c.axes = {intens("m_T")};
    } else if (name == "fig5a" || name == "fig5b") {
        c.mode = Mode::Sweep2D;
        c.params.gamma = 0.1;
        c.axes = {intens("m_T"), rates("kappa")};
    } else if (name == "fig5c" || name == "fig5d") {
        c.mode = Mode::Sweep2D;
        c.params.kappa = 0.1;
        c.axes = {intens("m_T"), rates("gamma")};
    } else if (name == "fig6") {
        c.mode = Mode::Evolve;
        c.params.kappa = 1.0; c.params.gamma = 0.1;
        c.axes = {intens("nm_T")};
    } else {
        throw ConfigError({"unknown preset: " + name});
    }
    return c;
}

ScenarioConfig parse_config(const json& doc) {
    std::vector<std::string> bad;
    ScenarioConfig c;

    if (!doc.is_object()) {
        throw ConfigError({"configuration document must be a JSON object"});
    }

    const std::set<std::string> known{
        "mode", "preset", "g", "gamma", "kappa", "n_T", "m_T", "cutoff",
        "omega_a", "omega_c", "t_max", "dt", "report_dt", "output", "format",
        "axes", "workers"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.count(key)) bad.push_back("unknown key: " + key);
    }

    if (doc.contains("preset")) {
        try {
            c = preset_config(doc["preset"].get<std::string>());
        } catch (const ConfigError& e) {
            bad.insert(bad.end(), e.violations.begin(), e.violations.end());
        }
    }

    if (doc.contains("mode")) {
        const auto m = doc["mode"].get<std::string>();
        if (m == "evolve") c.mode = Mode::Evolve;
        else if (m == "steady") c.mode = Mode::Steady;
        else if (m == "sweep2d") c.mode = Mode::Sweep2D;
        else if (m == "figure-preset") c.mode = Mode::FigurePreset;
        else bad.push_back("mode: expected evolve|steady|sweep2d|figure-preset, got " + m);
    }

    auto num = [&](const char* key, double& out, bool nonneg) {
        if (!doc.contains(key)) return;
        if (!doc[key].is_number()) { bad.push_back(std::string(key) + ": not a number"); return; }
        const double v = doc[key].get<double>();
        if (nonneg && v < 0) { bad.push_back(std::string(key) + ": must be >= 0"); return; }
        out = v;
    };
    num("g", c.params.g, false);
    if (doc.contains("g") && c.params.g < 0) bad.push_back("g: must be >= 0");
    num("gamma", c.params.gamma, true);
    num("kappa", c.params.kappa, true);
    num("n_T", c.params.n_T, true);
    num("m_T", c.params.m_T, true);
    num("t_max", c.t_max, true);
    num("dt", c.dt, true);
    num("report_dt", c.report_dt, true);
    if (doc.contains("cutoff")) {
        if (!doc["cutoff"].is_number_integer() || doc["cutoff"].get<int>() < 1) {
            bad.push_back("cutoff: must be an integer >= 1");
        } else {
            c.params.cutoff = doc["cutoff"].get<int>();
        }
    }
    if (doc.contains("omega_a")) c.params.omega_a = doc["omega_a"].get<double>();
    if (doc.contains("omega_c")) c.params.omega_c = doc["omega_c"].get<double>();
    if (doc.contains("workers")) {
        if (!doc["workers"].is_number_integer() || doc["workers"].get<int>() < 0) {
            bad.push_back("workers: must be an integer >= 0");
        } else {
            c.workers = doc["workers"].get<int>();
        }
    }
    if (doc.contains("output")) c.output_path = doc["output"].get<std::string>();
    if (doc.contains("format")) {
        const auto f = doc["format"].get<std::string>();
        if (f == "csv") c.format = OutputFormat::Csv;
        else if (f == "json") c.format = OutputFormat::Json;
        else bad.push_back("format: expected csv|json, got " + f);
    }

    if (doc.contains("axes")) {
        if (!doc["axes"].is_array() || doc["axes"].size() > 2) {
            bad.push_back("axes: expected an array of at most two axes");
        } else {
            c.axes.clear();
            int i = 0;
            for (const auto& ax : doc["axes"]) {
                SweepAxis a;
                const std::string where = "axes[" + std::to_string(i++) + "]";
                a.param = ax.value("param", "");
                if (!kAxisParams.count(a.param)) {
                    bad.push_back(where + ".param: expected one of n_T|m_T|gamma|kappa|nm_T");
                }
                a.start = ax.value("start", 0.0);
                a.stop = ax.value("stop", 0.0);
                a.count = ax.value("count", 0);
                if (a.count < 2) bad.push_back(where + ".count: must be >= 2");
                if (!(a.start < a.stop)) bad.push_back(where + ": start must be < stop");
                if (a.start < 0) bad.push_back(where + ".start: must be >= 0");
                c.axes.push_back(a);
            }
        }
    }

    if (!(c.dt > 0)) bad.push_back("dt: must be > 0");
    if (c.t_max < c.dt) bad.push_back("t_max: must be >= dt");

    if (!bad.empty()) throw ConfigError(std::move(bad));
    return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config parse error: ") + e.what()});
    }
    return parse_config(doc);
}

namespace {

std::map<std::string, std::string> config_meta(const ScenarioConfig& c) {
    std::map<std::string, std::string> m;
    m["mode"] = mode_name(c.mode);
    if (!c.preset.empty()) m["preset"] = c.preset;
    m["g"] = fmt(c.params.g);
    m["gamma"] = fmt(c.params.gamma);
    m["kappa"] = fmt(c.params.kappa);
    m["n_T"] = fmt(c.params.n_T);
    m["m_T"] = fmt(c.params.m_T);
    m["cutoff"] = std::to_string(c.params.cutoff);
    if (c.mode == Mode::Evolve) {
        m["t_max"] = fmt(c.t_max);
        m["dt"] = fmt(c.dt);
        m["report_dt"] = fmt(c.report_dt);
    }
    for (size_t i = 0; i < c.axes.size(); ++i) {
        const auto& a = c.axes[i];
        std::ostringstream os;
        os << a.param << " from " << fmt(a.start) << " to " << fmt(a.stop)
           << " in " << a.count << " points";
        m["axis" + std::to_string(i + 1)] = os.str();
    }
    return m;
}

ResultSet run_evolve(const ScenarioConfig& c) {
    ResultSet out;
    out.meta = config_meta(c);
    const bool swept = !c.axes.empty();
    out.columns.clear();
    if (swept) out.columns.push_back(c.axes[0].param);
    for (const char* col : {"time", "discord", "classical_correlation",
                            "mutual_information", "concurrence", "trace_drift"}) {
        out.columns.push_back(col);
    }

    std::vector<double> points = swept ? linspace(c.axes[0])
                                       : std::vector<double>{0.0};
    for (double x : points) {
        ModelParams p = c.params;
        if (swept) set_param(p, c.axes[0].param, x);
        try {
            std::vector<ResultRow> rows;
            const auto stats = evolve_observed(
                p, initial_state(p), c.t_max, c.dt, c.report_dt,
                [&](double t, const DensityMatrix& state) {
                    ResultRow row;
                    if (swept) row.values[c.axes[0].param] = x;
                    row.values["time"] = t;
                    fill_report_columns(row, atoms_report(state));
                    rows.push_back(std::move(row));
                });
            for (auto& row : rows) {
                row.values["trace_drift"] = stats.max_trace_drift;
                out.rows.push_back(std::move(row));
            }
        } catch (const std::exception& e) {
            ResultRow row;
            if (swept) row.values[c.axes[0].param] = x;
            row.error = e.what();
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

ResultRow steady_row(const ModelParams& p) {
    ResultRow row;
    row.values["n_T"] = p.n_T;
    row.values["m_T"] = p.m_T;
    row.values["gamma"] = p.gamma;
    row.values["kappa"] = p.kappa;
    try {
        const auto ss = steady_state(p);
        fill_report_columns(row, atoms_report(ss.state));
        row.values["photon_number"] = eval_observable(Observable::PhotonNumber, ss.state);
        row.values["residual"] = ss.residual;
        row.values["spectral_gap"] = ss.spectral_gap;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

const std::vector<std::string> kSteadyColumns{
    "n_T", "m_T", "gamma", "kappa", "discord", "classical_correlation",
    "mutual_information", "concurrence", "photon_number", "residual",
    "spectral_gap"};

ResultSet run_steady(const ScenarioConfig& c) {
    ResultSet out;
    out.meta = config_meta(c);
    out.columns = kSteadyColumns;
    out.rows.push_back(steady_row(c.params));
    return out;
}

ResultSet run_sweep(const ScenarioConfig& c) {
    if (c.axes.empty()) {
        throw ConfigError({"sweep2d: at least one sweep axis is required"});
    }
    ResultSet out;
    out.meta = config_meta(c);
    out.columns = kSteadyColumns;

    std::vector<ModelParams> points;
    const auto v1 = linspace(c.axes[0]);
    const auto v2 = c.axes.size() > 1 ? linspace(c.axes[1]) : std::vector<double>{0.0};
    for (double x1 : v1) {
        for (double x2 : v2) {
            ModelParams p = c.params;
            set_param(p, c.axes[0].param, x1);
            if (c.axes.size() > 1) set_param(p, c.axes[1].param, x2);
            points.push_back(p);
        }
    }

    std::vector<ResultRow> rows(points.size());
    const unsigned n_workers = c.workers > 0
        ? unsigned(c.workers)
        : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
            rows[i] = steady_row(points[i]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    out.rows = std::move(rows);
    return out;
}

}  // namespace

ResultSet run_scenario(const ScenarioConfig& config) {
    ScenarioConfig c = config;
    if (c.mode == Mode::FigurePreset) {
        if (c.preset.empty()) throw ConfigError({"figure-preset mode requires a preset name"});
        ScenarioConfig p = preset_config(c.preset);
        p.output_path = c.output_path;
        p.format = c.format;
        p.workers = c.workers;
        c = p;
    }
    switch (c.mode) {
        case Mode::Evolve: return run_evolve(c);
        case Mode::Steady: return run_steady(c);
        case Mode::Sweep2D: return run_sweep(c);
        case Mode::FigurePreset: break;
    }
    throw std::logic_error("run_scenario: unreachable mode");
}

void write_csv(const ResultSet& result, std::ostream& os) {
    for (const auto& [k, v] : result.meta) {
        os << "# " << k << " = " << v << "\n";
    }
    for (size_t i = 0; i < result.columns.size(); ++i) {
        if (i) os << ",";
        os << result.columns[i];
    }
    os << ",error\n";
    for (const auto& row : result.rows) {
        for (size_t i = 0; i < result.columns.size(); ++i) {
            if (i) os << ",";
            const auto it = row.values.find(result.columns[i]);
            if (it != row.values.end()) os << fmt(it->second);
        }
        os << "," << row.error << "\n";
    }
}

void write_json(const ResultSet& result, std::ostream& os) {
    json doc;
    doc["config"] = json::object();
    for (const auto& [k, v] : result.meta) doc["config"][k] = v;
    doc["rows"] = json::array();
    for (const auto& row : result.rows) {
        json r = json::object();
        for (const auto& col : result.columns) {
            const auto it = row.values.find(col);
            if (it != row.values.end()) r[col] = json::parse(fmt(it->second));
        }
        if (!row.error.empty()) r["error"] = row.error;
        doc["rows"].push_back(std::move(r));
    }
    os << doc.dump(2) << "\n";
}

void write_result(const ResultSet& result, const ScenarioConfig& config) {
    auto emit = [&](std::ostream& os) {
        if (config.format == OutputFormat::Csv) write_csv(result, os);
        else write_json(result, os);
    };
    if (config.output_path.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out(config.output_path);
        if (!out) throw std::runtime_error("cannot open output file: " + config.output_path);
        emit(out);
    }
}

json density_matrix_to_json(const DensityMatrix& rho) {
    json doc;
    doc["dims"] = rho.dims;
    json entries = json::array();
    for (Eigen::Index i = 0; i < rho.rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.rho.cols(); ++j) {
            const auto z = rho.rho(i, j);
            entries.push_back({z.real(), z.imag()});
        }
    }
    doc["entries"] = std::move(entries);
    return doc;
}

DensityMatrix density_matrix_from_json(const json& doc) {
    const auto dims = doc.at("dims").get<std::vector<int>>();
    long d = 1;
    for (int x : dims) d *= x;
    const auto& entries = doc.at("entries");
    if (static_cast<long>(entries.size()) != d * d) {
        throw std::invalid_argument("density matrix JSON: entry count mismatch");
    }
    Mat rho(d, d);
    long k = 0;
    for (long i = 0; i < d; ++i) {
        for (long j = 0; j < d; ++j, ++k) {
            rho(i, j) = Complex(entries[k][0].get<double>(), entries[k][1].get<double>());
        }
    }
    return DensityMatrix{std::move(rho), dims};
}

SettlingReport settling_report(const ModelParams& params, double physical_g,
                               double t_max, double dt, double report_dt) {
    if (!(physical_g > 0)) {
        throw std::invalid_argument("settling_report: physical_g must be positive");
    }
    std::vector<double> times, series;
    evolve_observed(params, initial_state(params), t_max, dt, report_dt,
                    [&](double t, const DensityMatrix& state) {
                        times.push_back(t);
                        series.push_back(atoms_report(state).discord);
                    });
    SettlingReport rep;
    rep.plateau = series.back();
    const double tol = 0.01 * std::max(rep.plateau, 1e-12);
    const auto settled = settle_time(times, series, tol);
    rep.settled = settled.has_value();
    if (rep.settled) {
        rep.settle_dimensionless = *settled;
        rep.settle_seconds = *settled / physical_g;
    }
    return rep;
}

}  // namespace qd
