// scenario.hpp — Scenario configuration, sweep execution, and CSV/JSON/SVG emission

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "probeqfi/bath.hpp"
#include "probeqfi/coherence.hpp"
#include "probeqfi/errors.hpp"
#include "probeqfi/fisher.hpp"
#include "probeqfi/optimize.hpp"
#include "probeqfi/plot_svg.hpp"
#include "probeqfi/sensitivity.hpp"
#include "probeqfi/version.hpp"

namespace probeqfi {

using ordered_json = nlohmann::ordered_json;

class ScenarioError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// sweep: optimized-QFI curves over a bath-parameter axis
// comparison: adds the classical Fisher information at the optimal angle
// angle_scan: classical Fisher vs measurement azimuth at a fixed bath
enum class FigureKind { Sweep, Comparison, AngleScan };

inline const char* to_string(FigureKind k) {
    switch (k) {
        case FigureKind::Sweep: return "sweep";
        case FigureKind::Comparison: return "comparison";
        case FigureKind::AngleScan: return "angle_scan";
    }
    return "?";
}

struct AxisSpec {
    std::string parameter = "omega_c";  // omega_c | G | T | s | phi_hat
    double min = 1.0;
    double max = 10.0;
    int points = 10;
    bool log_scale = false;

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i) {
            const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
            out.push_back(log_scale ? min * std::pow(max / min, f) : min + (max - min) * f);
        }
        return out;
    }
};

struct OutputSpec {
    std::string path;             // empty = derive from scenario name
    std::string format = "csv";   // csv | json | svg
};

struct Scenario {
    std::string name = "scenario";
    FigureKind kind = FigureKind::Sweep;
    BathParams bath{1.0, 5.0, 1.0, 0.0};
    ProbeParams probe{};
    EstimationTarget target = EstimationTarget::Coupling;
    bool correlations = true;  // include the correlated curves
    bool pulses = false;       // add the pulse-optimized curves
    AxisSpec axis{};
    OptimizationBudget budget{};
    OutputSpec output{};
    std::vector<std::string> notes;  // implementation-chosen settings, echoed into metadata
};

// ---------------------------------------------------------------------------
// JSON (de)serialization. Keys mirror the struct fields; all quantities are in
// probe-scaled units (hbar = k_B = 1, omega_0 = 1 by default).

inline ordered_json to_json(const Scenario& sc) {
    ordered_json j;
    j["name"] = sc.name;
    j["kind"] = to_string(sc.kind);
    j["bath"] = {{"G", sc.bath.G}, {"omega_c", sc.bath.omega_c}, {"s", sc.bath.s}, {"T", sc.bath.T}};
    j["probe"] = {{"omega_0", sc.probe.omega_0},
                  {"theta_0", sc.probe.theta_0},
                  {"phi_0", sc.probe.phi_0},
                  {"gamma_0", sc.probe.gamma_0}};
    j["target"] = to_string(sc.target);
    j["correlations"] = sc.correlations;
    j["pulses"] = sc.pulses;
    j["axis"] = {{"parameter", sc.axis.parameter},
                 {"min", sc.axis.min},
                 {"max", sc.axis.max},
                 {"points", sc.axis.points},
                 {"scale", sc.axis.log_scale ? "log" : "linear"}};
    j["budget"] = {{"t_min", sc.budget.t_min},
                   {"t_max", sc.budget.t_max},
                   {"coarse_points", sc.budget.coarse_points},
                   {"refine_tol", sc.budget.refine_tol},
                   {"n_max", sc.budget.n_max},
                   {"window_in_correlation_time", sc.budget.window_in_correlation_time}};
    j["output"] = {{"path", sc.output.path}, {"format", sc.output.format}};
    j["notes"] = sc.notes;
    return j;
}

inline EstimationTarget parse_target(const std::string& s) {
    if (s == "omega_c" || s == "wc") return EstimationTarget::CutoffFrequency;
    if (s == "G" || s == "g") return EstimationTarget::Coupling;
    if (s == "T") return EstimationTarget::Temperature;
    throw ScenarioError("target: expected one of omega_c|G|T, got '" + s + "'");
}

inline FigureKind parse_kind(const std::string& s) {
    if (s == "sweep") return FigureKind::Sweep;
    if (s == "comparison") return FigureKind::Comparison;
    if (s == "angle_scan") return FigureKind::AngleScan;
    throw ScenarioError("kind: expected sweep|comparison|angle_scan, got '" + s + "'");
}

inline Scenario scenario_from_json(const ordered_json& j) {
    Scenario sc;
    try {
        if (j.contains("name")) sc.name = j.at("name").get<std::string>();
        if (j.contains("kind")) sc.kind = parse_kind(j.at("kind").get<std::string>());
        const auto& jb = j.at("bath");
        sc.bath = BathParams(jb.at("G").get<double>(), jb.at("omega_c").get<double>(),
                             jb.at("s").get<double>(), jb.value("T", 0.0));
        if (j.contains("probe")) {
            const auto& jp = j.at("probe");
            sc.probe.omega_0 = jp.value("omega_0", 1.0);
            sc.probe.theta_0 = jp.value("theta_0", 0.5 * std::numbers::pi);
            sc.probe.phi_0 = jp.value("phi_0", 0.0);
            sc.probe.gamma_0 = jp.value("gamma_0", 0.0);
        }
        sc.target = parse_target(j.at("target").get<std::string>());
        sc.correlations = j.value("correlations", true);
        sc.pulses = j.value("pulses", false);
        const auto& ja = j.at("axis");
        sc.axis.parameter = ja.at("parameter").get<std::string>();
        sc.axis.min = ja.at("min").get<double>();
        sc.axis.max = ja.at("max").get<double>();
        sc.axis.points = ja.at("points").get<int>();
        const std::string scale = ja.value("scale", "linear");
        if (scale != "linear" && scale != "log")
            throw ScenarioError("axis.scale: expected linear|log, got '" + scale + "'");
        sc.axis.log_scale = (scale == "log");
        if (j.contains("budget")) {
            const auto& jg = j.at("budget");
            sc.budget.t_min = jg.value("t_min", sc.budget.t_min);
            sc.budget.t_max = jg.value("t_max", sc.budget.t_max);
            sc.budget.coarse_points = jg.value("coarse_points", sc.budget.coarse_points);
            sc.budget.refine_tol = jg.value("refine_tol", sc.budget.refine_tol);
            sc.budget.n_max = jg.value("n_max", sc.budget.n_max);
            sc.budget.window_in_correlation_time =
                jg.value("window_in_correlation_time", sc.budget.window_in_correlation_time);
        }
        if (j.contains("output")) {
            sc.output.path = j.at("output").value("path", std::string{});
            sc.output.format = j.at("output").value("format", "csv");
        }
        if (j.contains("notes"))
            for (const auto& note : j.at("notes")) sc.notes.push_back(note.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
    return sc;
}

inline void validate_scenario(const Scenario& sc) {
    sc.probe.validate();
    sc.budget.validate();
    if (sc.axis.points < 1) throw ScenarioError("axis.points must be >= 1");
    if (!(sc.axis.min <= sc.axis.max)) throw ScenarioError("axis: need min <= max");
    if (sc.axis.log_scale && !(sc.axis.min > 0.0))
        throw ScenarioError("axis: log scale requires min > 0");

    const std::string& p = sc.axis.parameter;
    const bool bath_param = (p == "omega_c" || p == "G" || p == "T" || p == "s");
    if (sc.kind == FigureKind::AngleScan) {
        if (p != "phi_hat")
            throw ScenarioError("axis.parameter: angle_scan sweeps phi_hat");
    } else if (!bath_param) {
        throw ScenarioError("axis.parameter: expected one of omega_c|G|T|s, got '" + p + "'");
    }
    if (bath_param && p != "T" && !(sc.axis.min > 0.0))
        throw ScenarioError("axis: " + p + " must stay > 0 over the sweep");
    if (p == "T" && !(sc.axis.min >= 0.0)) throw ScenarioError("axis: T must stay >= 0");

    if (sc.target == EstimationTarget::Temperature) {
        const bool axis_supplies_T = (p == "T" && sc.axis.min > 0.0);
        if (!axis_supplies_T && !(sc.bath.T > 0.0))
            throw ScenarioError("target T requires T > 0 (fixed bath.T or a positive T axis)");
    }
    if (sc.output.format != "csv" && sc.output.format != "json" && sc.output.format != "svg")
        throw ScenarioError("output.format: expected csv|json|svg");
}

inline BathParams bath_with_axis_value(const BathParams& base, const std::string& parameter, double v) {
    if (parameter == "omega_c") return base.with_cutoff(v);
    if (parameter == "G") return base.with_coupling(v);
    if (parameter == "T") return base.with_temperature(v);
    if (parameter == "s") return base.with_ohmicity(v);
    throw ScenarioError("axis.parameter: '" + parameter + "' is not a bath parameter");
}

// ---------------------------------------------------------------------------
// Sweep execution

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // failed rows carry NaN cells
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> scenario_columns(const Scenario& sc) {
    if (sc.kind == FigureKind::AngleScan) return {"axis_value", "cfi_opt", "t_opt"};
    std::vector<std::string> cols{"axis_value"};
    if (sc.correlations) cols.push_back("qfi_corr");
    cols.push_back("qfi_uncorr");
    if (sc.correlations) cols.push_back("t_opt_corr");
    cols.push_back("t_opt_uncorr");
    if (sc.pulses) {
        if (sc.correlations) cols.push_back("qfi_corr_pulsed");
        cols.push_back("qfi_uncorr_pulsed");
        if (sc.correlations) cols.push_back("t_opt_corr_pulsed");
        cols.push_back("t_opt_uncorr_pulsed");
        if (sc.correlations) cols.push_back("n_opt_corr_pulsed");
        cols.push_back("n_opt_uncorr_pulsed");
    }
    if (sc.kind == FigureKind::Comparison) cols.push_back("cfi_opt");
    return cols;
}

inline std::vector<double> scenario_row(const Scenario& sc, double axis_value) {
    std::vector<double> row{axis_value};
    if (sc.kind == FigureKind::AngleScan) {
        // Interaction time fixed at the information optimum; re-optimizing t
        // per angle would let the free precession re-align any azimuth and
        // flatten the scan.
        const auto ref = optimize_time(sc.bath, sc.probe, sc.target, sc.budget, true);
        const MeasurementSetting m(axis_value);
        row.push_back(classical_fisher(sc.bath, sc.probe, ref.t, {}, sc.target, m));
        row.push_back(ref.t);
        return row;
    }

    const BathParams bath = bath_with_axis_value(sc.bath, sc.axis.parameter, axis_value);
    std::optional<FisherReport> corr;
    if (sc.correlations) corr = optimize_time(bath, sc.probe, sc.target, sc.budget, true);
    const auto uncorr = optimize_time(bath, sc.probe, sc.target, sc.budget, false);
    if (corr) row.push_back(corr->value);
    row.push_back(uncorr.value);
    if (corr) row.push_back(corr->t);
    row.push_back(uncorr.t);
    if (sc.pulses) {
        std::optional<FisherReport> corr_p;
        if (sc.correlations) corr_p = optimize_pulses(bath, sc.probe, sc.target, sc.budget, true);
        const auto uncorr_p = optimize_pulses(bath, sc.probe, sc.target, sc.budget, false);
        if (corr_p) row.push_back(corr_p->value);
        row.push_back(uncorr_p.value);
        if (corr_p) row.push_back(corr_p->t);
        row.push_back(uncorr_p.t);
        if (corr_p) row.push_back(static_cast<double>(corr_p->n));
        row.push_back(static_cast<double>(uncorr_p.n));
    }
    if (sc.kind == FigureKind::Comparison) {
        const FisherReport& at = corr ? *corr : uncorr;
        const auto m = optimal_phi_hat(bath, sc.probe, at.t, {}, sc.target);
        row.push_back(classical_fisher(bath, sc.probe, at.t, {}, sc.target, m));
    }
    return row;
}

} // namespace detail

inline SweepTable run_scenario_table(const Scenario& sc) {
    validate_scenario(sc);
    SweepTable table;
    table.columns = detail::scenario_columns(sc);
    const auto axis = sc.axis.values();
    table.rows.assign(axis.size(), {});
    std::vector<std::string> errors(axis.size());
    detail::parallel_for_indexed(axis.size(), [&](std::size_t i) {
        try {
            table.rows[i] = detail::scenario_row(sc, axis[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!errors[i].empty()) {
            table.rows[i].assign(table.columns.size(), nan);
            table.rows[i][0] = axis[i];
            char buf[64];
            std::snprintf(buf, sizeof buf, "row %zu (axis %.6g): ", i, axis[i]);
            table.warnings.push_back(buf + errors[i]);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Emission. CSV carries a '#'-prefixed metadata header whose scenario line
// re-parses into the exact configuration that generated the file.

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace detail

inline std::string render_csv(const SweepTable& table, const Scenario& sc) {
    std::string out;
    out += std::string("# ") + kToolName + " " + kToolVersion + "\n";
    out += "# csv-schema: " + std::to_string(kCsvSchemaVersion) + "\n";
    out += "# scenario: " + to_json(sc).dump() + "\n";
    out += "# swept: " + sc.axis.parameter + " in [" + format_full(sc.axis.min) + ", "
         + format_full(sc.axis.max) + "], " + std::to_string(sc.axis.points) + " points, "
         + (sc.axis.log_scale ? "log" : "linear") + "\n";
    for (const auto& note : sc.notes) out += "# note: " + note + "\n";
    for (const auto& warning : table.warnings) out += "# warning: " + warning + "\n";
    std::string header;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) header += ",";
        header += table.columns[c];
    }
    out += header + "\n";
    for (const auto& row : table.rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += ",";
            line += format_full(row[c]);
        }
        out += line + "\n";
    }
    return out;
}

inline std::string render_json(const SweepTable& table, const Scenario& sc) {
    ordered_json j;
    j["tool"] = std::string(kToolName) + " " + kToolVersion;
    j["scenario"] = to_json(sc);
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    j["warnings"] = table.warnings;
    return j.dump(2) + "\n";
}

inline std::string render_svg(const SweepTable& table, const Scenario& sc) {
    std::vector<SvgSeries> series;
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        const std::string& name = table.columns[c];
        if (name.rfind("qfi", 0) != 0 && name.rfind("cfi", 0) != 0) continue;
        SvgSeries s;
        s.label = name;
        for (const auto& row : table.rows) {
            s.x.push_back(row[0]);
            s.y.push_back(row[c]);
        }
        series.push_back(std::move(s));
    }
    return render_svg_plot(series, sc.name + " (target " + to_string(sc.target) + ")",
                           sc.axis.parameter, /*log_y=*/true);
}

// Output path with the format's extension; derives "<name>.<ext>" when unset.
inline std::string resolved_output_path(const Scenario& sc) {
    if (!sc.output.path.empty()) return sc.output.path;
    return sc.name + "." + sc.output.format;
}

// Runs the sweep and writes the artifact (temp file + rename). Returns the
// table so callers can inspect warnings.
inline SweepTable run_scenario(const Scenario& sc) {
    const SweepTable table = run_scenario_table(sc);
    const std::string path = resolved_output_path(sc);
    if (sc.output.format == "csv")
        detail::write_file_atomically(path, render_csv(table, sc));
    else if (sc.output.format == "json")
        detail::write_file_atomically(path, render_json(table, sc));
    else
        detail::write_file_atomically(path, render_svg(table, sc));
    return table;
}

// Recovers the scenario from an emitted CSV's metadata header.
inline Scenario parse_scenario_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open CSV: " + path);
    std::string line;
    const std::string tag = "# scenario: ";
    while (std::getline(in, line)) {
        if (line.rfind(tag, 0) == 0) {
            const auto j = ordered_json::parse(line.substr(tag.size()));
            return scenario_from_json(j);
        }
        if (!line.empty() && line[0] != '#') break;
    }
    throw ScenarioError("CSV has no scenario metadata line: " + path);
}

// ---------------------------------------------------------------------------
// Single-configuration evaluation for debugging and spot checks.

struct PointConfig {
    BathParams bath{1.0, 5.0, 1.0, 0.0};
    ProbeParams probe{};
    double t = 1.0;
    PulseSchedule pulses{};
    EstimationTarget target = EstimationTarget::Coupling;
};

inline ordered_json point_query(const PointConfig& cfg) {
    cfg.probe.validate();
    cfg.pulses.validate();
    if (!(cfg.t >= 0.0)) throw std::domain_error("point_query: t must be >= 0");
    if (cfg.target == EstimationTarget::Temperature && !(cfg.bath.T > 0.0))
        throw std::domain_error("point_query: temperature estimation requires T > 0");

    ordered_json j;
    j["config"] = {{"bath", {{"G", cfg.bath.G}, {"omega_c", cfg.bath.omega_c}, {"s", cfg.bath.s}, {"T", cfg.bath.T}}},
                   {"probe", {{"omega_0", cfg.probe.omega_0}, {"theta_0", cfg.probe.theta_0}, {"phi_0", cfg.probe.phi_0}, {"gamma_0", cfg.probe.gamma_0}}},
                   {"t", cfg.t},
                   {"n", cfg.pulses.n},
                   {"target", to_string(cfg.target)}};

    const auto rec = coherence_record(cfg.bath, cfg.probe, cfg.t, cfg.pulses);
    j["coherence"] = {{"t", rec.t},
                      {"gamma_uc", rec.gamma_uc},
                      {"gamma_corr", rec.gamma_corr},
                      {"phi", rec.phi},
                      {"chi", rec.chi},
                      {"gamma_total", rec.gamma_total}};

    if (cfg.t > 0.0) {
        const auto sens = sensitivities(cfg.bath, cfg.probe, cfg.t, cfg.pulses, cfg.target);
        j["sensitivity"] = {{"target", to_string(sens.target)},
                            {"method", to_string(sens.method)},
                            {"dgamma_dx", sens.dgamma_dx()},
                            {"dgamma_uc_dx", sens.dgamma_uc_dx},
                            {"dphi_dx", sens.dphi_dx},
                            {"dchi_dx", sens.dchi_dx}};
    }

    const auto corr = qfi(cfg.bath, cfg.probe, cfg.t, cfg.pulses, cfg.target, true);
    const auto uncorr = qfi(cfg.bath, cfg.probe, cfg.t, cfg.pulses, cfg.target, false);
    auto fisher_json = [](const FisherReport& r) {
        ordered_json f{{"value", r.value},
                       {"term_decoherence", r.term_decoherence},
                       {"term_levelshift", r.term_levelshift},
                       {"correlations_included", r.correlations_included}};
        if (r.degenerate) f["degenerate"] = true;
        return f;
    };
    j["qfi_correlated"] = fisher_json(corr);
    j["qfi_uncorrelated"] = fisher_json(uncorr);

    if (cfg.t > 0.0) {
        try {
            j["optimal_phi_hat"] = optimal_phi_hat(cfg.bath, cfg.probe, cfg.t, cfg.pulses, cfg.target).phi_hat;
        } catch (const NoInformation& e) {
            j["optimal_phi_hat"] = nullptr;
            j["optimal_phi_hat_note"] = e.what();
        }
    }
    return j;
}

} // namespace probeqfi
