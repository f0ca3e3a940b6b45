// probe_qfi.cpp — command-line front end: scenario runs, figure presets, point queries

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probeqfi/figures.hpp"
#include "probeqfi/scenario.hpp"
#include "probeqfi/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;     // usage / config errors
constexpr int kExitNumerical = 2; // numerical failures

// Applies the shared CLI modifiers to a scenario.
void apply_modifiers(probeqfi::Scenario& sc, bool with_pulses, bool no_correlations,
                     const std::string& out, const std::string& format) {
    if (with_pulses) sc.pulses = true;
    if (no_correlations) sc.correlations = false;
    if (!format.empty()) sc.output.format = format;
    if (!out.empty()) sc.output.path = out;
}

int run_one_scenario(const probeqfi::Scenario& sc) {
    const auto table = probeqfi::run_scenario(sc);
    std::printf("wrote %s (%zu rows)\n", probeqfi::resolved_output_path(sc).c_str(), table.rows.size());
    for (const auto& warning : table.warnings)
        std::fprintf(stderr, "warning: %s\n", warning.c_str());
    return table.warnings.empty() ? kExitOk : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(probeqfi::kToolName) + " " + probeqfi::kToolVersion
                 + " — Fisher-information toolkit for a dephasing two-level probe"};
    app.require_subcommand(1);

    // shared output modifiers
    std::string out_path;
    std::string format;
    bool with_pulses = false;
    bool no_correlations = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default: derived from the scenario name)");
        cmd->add_option("--format", format, "output format: csv|json|svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        cmd->add_flag("--with-pulses", with_pulses, "add the pulse-optimized curves");
        cmd->add_flag("--no-correlations", no_correlations, "drop the correlated curves");
    };

    // run <config.json>
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run a scenario from a JSON config");
    run_cmd->add_option("config", config_path, "scenario JSON file")->required();
    add_common(run_cmd);

    // figure <fig1..fig12>
    std::string figure_name;
    auto* fig_cmd = app.add_subcommand("figure", "run a built-in figure preset (fig1..fig12)");
    fig_cmd->add_option("name", figure_name, "figure preset name")->required();
    add_common(fig_cmd);

    // point --s --G --wc --T --t [--n] --target ...
    double p_s = 1.0, p_G = 1.0, p_wc = 5.0, p_T = 0.0, p_t = 1.0;
    double p_omega0 = 1.0, p_theta0 = 0.5 * std::numbers::pi, p_phi0 = 0.0, p_gamma0 = 0.0;
    int p_n = 0;
    std::string p_target = "G";
    auto* point_cmd = app.add_subcommand("point", "evaluate one configuration and print JSON");
    point_cmd->add_option("--s", p_s, "Ohmicity exponent")->required();
    point_cmd->add_option("--G", p_G, "coupling strength")->required();
    point_cmd->add_option("--wc", p_wc, "cutoff frequency")->required();
    point_cmd->add_option("--T", p_T, "temperature")->required();
    point_cmd->add_option("--t", p_t, "interaction time")->required();
    point_cmd->add_option("--n", p_n, "pulse count (default 0)");
    point_cmd->add_option("--target", p_target, "estimation target: omega_c|wc|G|T");
    point_cmd->add_option("--omega0", p_omega0, "probe splitting (default 1)");
    point_cmd->add_option("--theta0", p_theta0, "initial polar angle (default pi/2)");
    point_cmd->add_option("--phi0", p_phi0, "initial azimuth (default 0)");
    point_cmd->add_option("--gamma0", p_gamma0, "initial mixedness exponent (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "error: cannot open config '%s'\n", config_path.c_str());
                return kExitUsage;
            }
            probeqfi::ordered_json j;
            try {
                j = probeqfi::ordered_json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                std::fprintf(stderr, "error: %s: %s\n", config_path.c_str(), e.what());
                return kExitUsage;
            }
            auto sc = probeqfi::scenario_from_json(j);
            apply_modifiers(sc, with_pulses, no_correlations, out_path, format);
            probeqfi::validate_scenario(sc);
            return run_one_scenario(sc);
        }

        if (fig_cmd->parsed()) {
            auto preset = probeqfi::figure_preset(figure_name);
            int status = kExitOk;
            for (auto sc : preset.curves) {
                apply_modifiers(sc, with_pulses, no_correlations, "", format);
                if (!out_path.empty()) {
                    // multi-curve figures suffix the requested stem with the curve name
                    if (preset.curves.size() == 1) {
                        sc.output.path = out_path;
                    } else {
                        const auto dot = out_path.rfind('.');
                        const std::string stem = dot == std::string::npos ? out_path : out_path.substr(0, dot);
                        const std::string ext = dot == std::string::npos ? "" : out_path.substr(dot);
                        sc.output.path = stem + "_" + sc.name + ext;
                    }
                }
                probeqfi::validate_scenario(sc);
                status = std::max(status, run_one_scenario(sc));
            }
            return status;
        }

        // point
        probeqfi::PointConfig cfg;
        cfg.bath = probeqfi::BathParams(p_G, p_wc, p_s, p_T);
        cfg.probe.omega_0 = p_omega0;
        cfg.probe.theta_0 = p_theta0;
        cfg.probe.phi_0 = p_phi0;
        cfg.probe.gamma_0 = p_gamma0;
        cfg.t = p_t;
        cfg.pulses.n = p_n;
        cfg.target = probeqfi::parse_target(p_target);
        std::cout << probeqfi::point_query(cfg).dump(2) << "\n";
        return kExitOk;
    } catch (const probeqfi::ScenarioError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}
