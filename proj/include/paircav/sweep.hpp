// sweep.hpp — figure-preset parameter sweeps: configuration, parallel grid
// execution, CSV emission, and the per-preset acceptance report.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paircav/hilbert.hpp"
#include "paircav/params.hpp"

namespace paircav {

enum class Spacing { Linear, Log };

// One sweep axis: either a uniform min/max/points grid or an explicit value list.
struct AxisSpec {
    std::string parameter;
    double min{0.0};
    double max{0.0};
    int points{0};
    Spacing spacing{Spacing::Linear};
    std::vector<double> values;  // when nonempty, overrides min/max/points

    std::vector<double> grid() const;
};

enum class InterferenceMode { Off, AnalyticOptimum, Explicit };

struct InterferenceSpec {
    InterferenceMode mode{InterferenceMode::Off};
    double theta{0.0};  // used by Explicit
    double eta{0.0};
};

struct TauGridSpec {
    double min{0.0};
    double max{10.0};
    int points{200};
    Spacing spacing{Spacing::Log};

    std::vector<double> grid() const;
};

struct SweepConfig {
    EffectiveParams base_effective;
    DissipationParams base_dissipation;
    AxisSpec axis_1;
    std::optional<AxisSpec> axis_2;
    InterferenceSpec interference;
    // Standing constraints of the model, re-applied after axis values unless an
    // axis names the tied field itself: delta_b = delta_a, delta_r = 2 delta_a,
    // and u_b = g^2 / u_a.
    bool tie_detunings{true};
    bool tie_stark{true};
    HilbertDims cutoffs{5, 5};
    std::vector<std::string> outputs;
    std::optional<TauGridSpec> tau_grid;
    int workers{0};      // 0 = hardware concurrency (or PAIRCAV_WORKERS)
    std::string preset;  // set by figure_preset; echoed into the CSV
};

// Throws ConfigError with a description of the first problem found.
void validate_config(const SweepConfig& config);

struct ResultRow {
    std::vector<double> axis_values;  // resolved value per axis, row-major order
    std::optional<double> tau;        // set when the config has a tau grid
    std::optional<double> n_s_a, n_s_b;
    std::optional<double> g2_aa, g2_bb, g2_ab;
    std::optional<double> gamma_param;
    std::optional<double> g2_aa_tau, g2_bb_tau, g2_ab_tau;
    double theta_used{0.0};
    double eta_used{0.0};
    bool converged{false};
    std::string error;  // typed error tag, empty on success
};

struct SweepDataset {
    SweepConfig config;
    std::vector<std::string> columns;
    std::vector<ResultRow> rows;
};

// One row per grid point (times the tau grid when present), row-major in the
// axes, deterministic for a fixed config regardless of the worker count.
SweepDataset run_sweep(const SweepConfig& config);

// Paper-panel presets: fig2a..fig2d, fig3a, fig3b, fig4a..fig4f, fig5a, fig5b, figS2, figS4.
SweepConfig figure_preset(const std::string& name);
std::vector<std::string> preset_names();

// Plain-text plotting recipe for a preset's CSV.
std::string plotting_recipe(const std::string& preset);

// Fixed CSV format: header row, comma separator, 12 significant digits.
void write_csv(const SweepDataset& dataset, std::ostream& out);
std::string to_csv(const SweepDataset& dataset);

// Reads a dataset back from CSV (header identifies the columns; the embedded
// preset column restores which acceptance checks apply).
SweepDataset read_csv(std::istream& in);

// JSON config document (see README for the schema; // comments are allowed).
SweepConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SweepConfig& config);

struct CheckResult {
    std::string name;
    bool pass{false};
    std::string detail;
};

struct AcceptanceReport {
    std::string preset;
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
    bool all_pass{true};
};

// Evaluates the shape/threshold checks that apply to the dataset's preset.
AcceptanceReport report(const SweepDataset& dataset);

}  // namespace paircav
