#include <catch2/catch.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "probeqfi/figures.hpp"
#include "probeqfi/scenario.hpp"

using namespace probeqfi;
namespace fs = std::filesystem;

namespace {

Scenario tiny_scenario() {
    Scenario sc;
    sc.name = "tiny";
    sc.bath = BathParams(0.01, 5.0, 0.5, 0.0);
    sc.target = EstimationTarget::CutoffFrequency;
    sc.axis = AxisSpec{"omega_c", 1.0, 10.0, 3, false};
    sc.budget.coarse_points = 64;
    return sc;
}

fs::path temp_dir() {
    const auto dir = fs::temp_directory_path() / "probeqfi_test_out";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("scenario JSON round trip is lossless") {
    Scenario sc = tiny_scenario();
    sc.pulses = true;
    sc.kind = FigureKind::Comparison;
    sc.budget.refine_tol = 3.5e-9;
    sc.probe.theta_0 = 1.234567890123456;
    sc.notes = {"a note"};
    const auto j = to_json(sc);
    const Scenario back = scenario_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    const Scenario reparsed = scenario_from_json(ordered_json::parse(j.dump()));
    CHECK(to_json(reparsed).dump() == j.dump());
}

TEST_CASE("scenario validation rejects contradictory configurations") {
    auto sc = tiny_scenario();
    sc.axis.parameter = "nope";
    CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);

    sc = tiny_scenario();
    sc.axis.log_scale = true;
    sc.axis.min = 0.0;
    CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);

    sc = tiny_scenario();
    sc.target = EstimationTarget::Temperature;  // T = 0 bath, axis is omega_c
    CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);

    sc = tiny_scenario();
    sc.kind = FigureKind::AngleScan;  // angle scans sweep phi_hat
    CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);

    sc = tiny_scenario();
    sc.output.format = "pdf";
    CHECK_THROWS_AS(validate_scenario(sc), ScenarioError);

    CHECK_THROWS_AS(parse_target("Temperature-ish"), ScenarioError);
    // sweeping T with target T is allowed
    sc = tiny_scenario();
    sc.target = EstimationTarget::Temperature;
    sc.axis = AxisSpec{"T", 0.1, 2.0, 3, false};
    sc.budget.coarse_points = 32;
    CHECK_NOTHROW(validate_scenario(sc));
}

TEST_CASE("sweep table carries the documented column schema") {
    auto sc = tiny_scenario();
    const auto table = run_scenario_table(sc);
    const std::vector<std::string> want{"axis_value", "qfi_corr", "qfi_uncorr", "t_opt_corr",
                                        "t_opt_uncorr"};
    CHECK(table.columns == want);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows.front()[0] == Approx(1.0));
    CHECK(table.rows.back()[0] == Approx(10.0));
    CHECK(table.warnings.empty());

    sc.correlations = false;
    const auto baseline = run_scenario_table(sc);
    CHECK(baseline.columns == std::vector<std::string>{"axis_value", "qfi_uncorr", "t_opt_uncorr"});
}

TEST_CASE("CSV round trip: metadata reparses and regenerates the identical file") {
    auto sc = tiny_scenario();
    sc.output.path = (temp_dir() / "tiny.csv").string();
    run_scenario(sc);
    const std::string first = slurp(sc.output.path);

    const Scenario back = parse_scenario_csv(sc.output.path);
    const auto again = render_csv(run_scenario_table(back), back);
    CHECK(again == first);

    // full-precision cells round-trip through text
    const auto table = run_scenario_table(sc);
    for (const auto& row : table.rows)
        for (double v : row) CHECK(std::strtod(format_full(v).c_str(), nullptr) == v);
}

TEST_CASE("row failures become NaN cells plus a warning, not a fatal error") {
    auto sc = tiny_scenario();
    sc.probe.theta_0 = 0.0;  // pole-aligned probe: every optimization is uninformative
    const auto table = run_scenario_table(sc);
    REQUIRE(table.warnings.size() == 3);
    for (const auto& row : table.rows) {
        CHECK(std::isfinite(row[0]));
        for (std::size_t c = 1; c < row.size(); ++c) CHECK(std::isnan(row[c]));
    }
    const auto csv = render_csv(table, sc);
    CHECK(csv.find("# warning:") != std::string::npos);
    CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("angle scans hold the interaction time fixed and expose the angle dependence") {
    Scenario sc;
    sc.name = "scan";
    sc.kind = FigureKind::AngleScan;
    sc.bath = BathParams(1.0, 5.0, 0.1, 0.0);
    sc.target = EstimationTarget::CutoffFrequency;
    sc.axis = AxisSpec{"phi_hat", 0.0, 2.0 * std::numbers::pi, 32, false};
    sc.budget.coarse_points = 400;
    const auto table = run_scenario_table(sc);
    REQUIRE(table.columns == std::vector<std::string>{"axis_value", "cfi_opt", "t_opt"});
    double lo = 1e300, hi = 0.0;
    for (const auto& row : table.rows) {
        CHECK(row[2] == table.rows.front()[2]);  // one reference time for the whole scan
        lo = std::min(lo, row[1]);
        hi = std::max(hi, row[1]);
    }
    CHECK(hi > 20.0 * lo);  // the azimuth choice matters
    const double best = optimize_time(sc.bath, sc.probe, sc.target, sc.budget, true).value;
    CHECK(hi <= best * (1.0 + 1e-9));
    CHECK(hi > 0.8 * best);  // the scan grid brushes the optimal angle
}

TEST_CASE("JSON and SVG emission") {
    auto sc = tiny_scenario();
    const auto table = run_scenario_table(sc);
    const auto j = ordered_json::parse(render_json(table, sc));
    CHECK(j.at("columns").size() == table.columns.size());
    CHECK(j.at("rows").size() == 3);

    const auto svg = render_svg(table, sc);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("qfi_corr") != std::string::npos);
}

TEST_CASE("figure presets cover fig1..fig12 and carry their fixed parameters") {
    for (const auto& name : figure_names()) {
        const auto preset = figure_preset(name);
        CHECK_FALSE(preset.curves.empty());
        for (const auto& sc : preset.curves) CHECK_NOTHROW(validate_scenario(sc));
    }
    const auto fig1 = figure_preset("fig1");
    REQUIRE(fig1.curves.size() == 1);
    CHECK(fig1.curves[0].bath.G == 0.01);
    CHECK(fig1.curves[0].bath.s == 0.5);
    CHECK(fig1.curves[0].bath.T == 0.0);
    CHECK(fig1.curves[0].axis.parameter == "omega_c");
    CHECK(fig1.curves[0].axis.min == 1.0);
    CHECK(fig1.curves[0].axis.max == 10.0);

    const auto fig4 = figure_preset("fig4");
    CHECK(fig4.curves.size() == 3);
    CHECK(fig4.curves[0].bath.omega_c == 5.0);

    const auto fig10 = figure_preset("fig10");
    CHECK(fig10.curves[0].pulses);
    CHECK_THROWS_AS(figure_preset("fig13"), std::invalid_argument);
}

TEST_CASE("point query emits the documented fields") {
    PointConfig cfg;
    cfg.bath = BathParams(1.0, 5.0, 1.0, 0.0);
    cfg.t = 1.0;
    cfg.target = EstimationTarget::Coupling;
    const auto j = point_query(cfg);
    CHECK(std::abs(j.at("qfi_correlated").at("value").get<double>() - 0.178701) < 1e-5);
    CHECK(std::abs(j.at("qfi_uncorrelated").at("value").get<double>() - 0.106154) < 1e-5);
    CHECK(j.at("coherence").at("chi").get<double>() == Approx(std::atan(5.0)));
    CHECK(j.at("sensitivity").at("method").get<std::string>() == "analytic");
    CHECK(j.contains("optimal_phi_hat"));

    cfg.t = 0.0;
    const auto degenerate = point_query(cfg);
    CHECK(degenerate.at("qfi_correlated").at("degenerate").get<bool>());

    cfg.t = 1.0;
    cfg.target = EstimationTarget::Temperature;  // bath.T == 0
    CHECK_THROWS_AS(point_query(cfg), std::domain_error);
}
