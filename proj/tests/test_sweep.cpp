#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "paircav/model.hpp"
#include "paircav/sweep.hpp"

using namespace paircav;

namespace {

// tiny driven config that runs in milliseconds
SweepConfig small_config() {
    SweepConfig config;
    const OperatingPoint pt = default_operating_point(4.0, -1.0);
    config.base_effective = pt.effective;
    config.base_dissipation = pt.dissipation;
    config.axis_1.parameter = "delta_a";
    config.axis_1.min = -1.2;
    config.axis_1.max = -0.8;
    config.axis_1.points = 3;
    config.interference.mode = InterferenceMode::AnalyticOptimum;
    config.cutoffs = HilbertDims(2, 2);
    config.outputs = {"n_s_a", "g2_aa", "gamma_param"};
    return config;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("axis grids") {
    AxisSpec axis;
    axis.parameter = "delta_a";
    axis.min = 0.0;
    axis.max = 1.0;
    axis.points = 5;
    const auto linear = axis.grid();
    CHECK(linear.size() == 5);
    CHECK(linear[2] == doctest::Approx(0.5));

    axis.min = 0.1;
    axis.max = 10.0;
    axis.points = 3;
    axis.spacing = Spacing::Log;
    const auto log_grid = axis.grid();
    CHECK(log_grid[1] == doctest::Approx(1.0));

    axis.values = {3.0, 1.0};
    CHECK(axis.grid() == std::vector<double>{3.0, 1.0});
}

TEST_CASE("config validation") {
    SweepConfig config = small_config();
    CHECK_NOTHROW(validate_config(config));

    SweepConfig bad = config;
    bad.axis_1.parameter = "not_a_field";
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = config;
    bad.axis_1.points = 1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = config;
    bad.axis_2 = bad.axis_1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = config;
    bad.axis_1.parameter = "eta";
    bad.axis_1.min = 0.0;
    bad.axis_1.max = 0.1;
    bad.interference.mode = InterferenceMode::Off;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = config;
    bad.outputs = {"g2_aa_tau"};
    CHECK_THROWS_AS(validate_config(bad), ConfigError);  // needs a tau grid

    bad = config;
    bad.outputs = {"nonsense"};
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("json config round trip") {
    SweepConfig config = small_config();
    config.axis_2 = AxisSpec{};
    config.axis_2->parameter = "kappa_b";
    config.axis_2->values = {0.5, 1.0, 2.0};
    config.tie_detunings = false;
    config.workers = 2;
    config.preset = "custom";

    const std::string text = config_to_json_text(config);
    const SweepConfig parsed = config_from_json_text(text);
    CHECK(parsed.axis_1.parameter == config.axis_1.parameter);
    CHECK(parsed.axis_1.points == config.axis_1.points);
    CHECK(parsed.axis_2->values == config.axis_2->values);
    CHECK(parsed.tie_detunings == false);
    CHECK(parsed.workers == 2);
    CHECK(parsed.preset == "custom");
    CHECK(parsed.base_effective.delta_a == doctest::Approx(config.base_effective.delta_a));
    CHECK(parsed.interference.mode == InterferenceMode::AnalyticOptimum);

    // comments are tolerated
    CHECK_NOTHROW(config_from_json_text("// header\n" + text));
    CHECK_THROWS_AS(config_from_json_text("{ not json"), ConfigError);
}

TEST_CASE("grid sizes default to 101 per axis and 41x41 for two axes") {
    const SweepConfig one = config_from_json_text(
        R"({"axis_1": {"parameter": "delta_a", "min": -4.0, "max": 4.0}})");
    CHECK(one.axis_1.points == 101);

    const SweepConfig two = config_from_json_text(
        R"({"axis_1": {"parameter": "delta_a", "min": -4.0, "max": 4.0},
            "axis_2": {"parameter": "theta", "min": -3.0, "max": 3.0}})");
    CHECK(two.axis_1.points == 41);
    CHECK(two.axis_2->points == 41);
}

TEST_CASE("all figure presets resolve and validate") {
    for (const std::string& name : preset_names()) {
        const SweepConfig config = figure_preset(name);
        CHECK(config.preset == name);
        CHECK_NOTHROW(validate_config(config));
        CHECK_NOTHROW(plotting_recipe(name));
    }
    CHECK_THROWS_AS(figure_preset("fig9z"), UnknownPreset);

    const SweepConfig fig4e = figure_preset("fig4e");
    CHECK(fig4e.axis_1.parameter == "u_a");
    CHECK(fig4e.axis_1.min == doctest::Approx(2.0));   // u_a/g = 1
    CHECK(fig4e.axis_1.max == doctest::Approx(20.0));  // u_a/g = 10
    CHECK(fig4e.base_effective.delta_a == doctest::Approx(-1.0));
    CHECK(fig4e.interference.mode == InterferenceMode::AnalyticOptimum);

    const SweepConfig fig2c = figure_preset("fig2c");
    CHECK(fig2c.interference.mode == InterferenceMode::Off);
    CHECK(fig2c.outputs == std::vector<std::string>{"n_s_a", "n_s_b"});
}

TEST_CASE("deterministic rows and byte-identical csv") {
    SweepConfig config = small_config();
    config.axis_1.min = config.axis_1.max = -1.0;  // degenerate endpoints
    config.axis_1.points = 2;
    const SweepDataset first = run_sweep(config);
    const SweepDataset second = run_sweep(config);

    REQUIRE(first.rows.size() == 2);
    CHECK(first.rows[0].axis_values == first.rows[1].axis_values);
    CHECK(first.rows[0].n_s_a == first.rows[1].n_s_a);
    CHECK(to_csv(first) == to_csv(second));
}

TEST_CASE("csv independent of the worker count, including the env override") {
    SweepConfig config = small_config();
    config.workers = 2;
    const std::string parallel = to_csv(run_sweep(config));

    setenv("PAIRCAV_WORKERS", "1", 1);  // env beats the config value
    const std::string serial = to_csv(run_sweep(config));
    unsetenv("PAIRCAV_WORKERS");

    CHECK(parallel == serial);
}

TEST_CASE("row count and resolved interference parameters") {
    SweepConfig config = small_config();
    config.axis_2 = AxisSpec{};
    config.axis_2->parameter = "gamma_d";
    config.axis_2->values = {0.01, 0.1};
    const SweepDataset dataset = run_sweep(config);
    REQUIRE(dataset.rows.size() == 6);  // 3 x 2, row-major

    CHECK(dataset.rows[0].axis_values[0] == doctest::Approx(-1.2));
    CHECK(dataset.rows[0].axis_values[1] == doctest::Approx(0.01));
    CHECK(dataset.rows[1].axis_values[1] == doctest::Approx(0.1));

    for (const ResultRow& row : dataset.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.eta_used > 0.0);
        CHECK(row.theta_used < 0.0);
        // the optimum actually used matches a direct evaluation at the row point
        const OperatingPoint pt = default_operating_point(4.0, row.axis_values[0]);
        DissipationParams d = pt.dissipation;
        d.gamma_d = row.axis_values[1];
        const InterferenceOptimum opt = interference_optimum(pt.effective, d);
        CHECK(row.theta_used == doctest::Approx(opt.theta).epsilon(1e-12));
        CHECK(row.eta_used == doctest::Approx(opt.eta).epsilon(1e-12));
    }
}

TEST_CASE("theta axis overrides only the phase under analytic optimum") {
    SweepConfig config = small_config();
    config.axis_1.parameter = "theta";
    config.axis_1.min = -3.0;
    config.axis_1.max = 0.0;
    config.axis_1.points = 4;
    const SweepDataset dataset = run_sweep(config);
    for (const ResultRow& row : dataset.rows) {
        REQUIRE(row.error.empty());
        CHECK(row.theta_used == doctest::Approx(row.axis_values[0]));
        const OperatingPoint pt = default_operating_point(4.0, -1.0);
        const InterferenceOptimum opt = interference_optimum(pt.effective, pt.dissipation);
        CHECK(row.eta_used == doctest::Approx(opt.eta).epsilon(1e-12));
    }
}

TEST_CASE("per-point failures are recorded, not fatal") {
    SweepConfig config = small_config();
    config.axis_1.parameter = "u_a";
    config.axis_1.values = {4.0, 0.0, 2.0};  // u_a = 0 breaks the Stark tie
    const SweepDataset dataset = run_sweep(config);
    REQUIRE(dataset.rows.size() == 3);
    CHECK(dataset.rows[0].error.empty());
    CHECK(dataset.rows[1].error == "singular-parameter");
    CHECK(!dataset.rows[1].n_s_a.has_value());
    CHECK(dataset.rows[2].error.empty());
}

TEST_CASE("csv round trip") {
    SweepConfig config = small_config();
    const SweepDataset dataset = run_sweep(config);
    std::stringstream buffer;
    write_csv(dataset, buffer);
    const SweepDataset loaded = read_csv(buffer);

    CHECK(loaded.columns == dataset.columns);
    REQUIRE(loaded.rows.size() == dataset.rows.size());
    CHECK(loaded.config.axis_1.parameter == "delta_a");
    for (std::size_t i = 0; i < loaded.rows.size(); ++i) {
        CHECK(loaded.rows[i].axis_values[0] ==
              doctest::Approx(dataset.rows[i].axis_values[0]).epsilon(1e-11));
        REQUIRE(loaded.rows[i].n_s_a.has_value());
        CHECK(*loaded.rows[i].n_s_a == doctest::Approx(*dataset.rows[i].n_s_a).epsilon(1e-11));
        CHECK(loaded.rows[i].converged == dataset.rows[i].converged);
    }
}

TEST_CASE("shipped config examples match the compiled presets") {
    for (const std::string& name : preset_names()) {
        std::ifstream in(std::string(PAIRCAV_CONFIG_DIR) + "/" + name + ".json");
        REQUIRE(in.good());
        std::ostringstream text;
        text << in.rdbuf();
        const SweepConfig from_file = config_from_json_text(text.str());
        const SweepConfig compiled = figure_preset(name);
        CHECK(from_file.preset == compiled.preset);
        CHECK(from_file.axis_1.parameter == compiled.axis_1.parameter);
        CHECK(from_file.axis_1.grid() == compiled.axis_1.grid());
        CHECK(from_file.axis_2.has_value() == compiled.axis_2.has_value());
        if (compiled.axis_2) CHECK(from_file.axis_2->grid() == compiled.axis_2->grid());
        CHECK(from_file.interference.mode == compiled.interference.mode);
        CHECK(from_file.outputs == compiled.outputs);
        CHECK(from_file.tau_grid.has_value() == compiled.tau_grid.has_value());
        CHECK(from_file.base_effective.u_a == compiled.base_effective.u_a);
        CHECK(from_file.base_effective.delta_a == compiled.base_effective.delta_a);
    }
}

TEST_CASE("report handles empty and unnamed datasets") {
    SweepDataset empty;
    const AcceptanceReport rep = report(empty);
    CHECK(rep.all_pass);
    CHECK(!rep.warnings.empty());

    SweepDataset unnamed = run_sweep(small_config());
    unnamed.config.preset.clear();
    const AcceptanceReport rep2 = report(unnamed);
    CHECK(rep2.all_pass);
    CHECK(rep2.checks.empty());
}

}  // TEST_SUITE
