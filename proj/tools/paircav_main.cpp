// paircav CLI: figure-preset sweeps of the bimodal-cavity photon-pair model.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure in >= 1
// grid point (or failed report checks).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "paircav/errors.hpp"
#include "paircav/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw paircav::ConfigError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int write_dataset(const paircav::SweepDataset& dataset, const std::string& out_path) {
    {
        std::ofstream out(out_path);
        if (!out) throw paircav::ConfigError("cannot write '" + out_path + "'");
        paircav::write_csv(dataset, out);
    }
    std::size_t failed = 0;
    for (const auto& row : dataset.rows)
        if (!row.error.empty()) ++failed;
    std::cout << "wrote " << dataset.rows.size() << " rows to " << out_path;
    if (failed > 0) std::cout << " (" << failed << " points failed)";
    std::cout << "\n";
    return failed == 0 ? 0 : 2;
}

void write_recipe(const std::string& preset, const std::string& csv_path) {
    std::string recipe;
    try {
        recipe = paircav::plotting_recipe(preset);
    } catch (const paircav::UnknownPreset&) {
        return;  // custom dataset name, nothing to say
    }
    const std::string path = csv_path + ".recipe.txt";
    std::ofstream out(path);
    if (!out) return;
    out << recipe << "\n";
    std::cout << "plotting recipe: " << path << "\n";
}

int print_report(const paircav::AcceptanceReport& rep) {
    for (const auto& warning : rep.warnings) std::cout << "WARN  " << warning << "\n";
    for (const auto& check : rep.checks)
        std::cout << (check.pass ? "PASS  " : "FAIL  ") << check.name << "  [" << check.detail
                  << "]\n";
    if (rep.checks.empty())
        std::cout << "PASS  (vacuous)\n";
    else
        std::cout << (rep.all_pass ? "PASS" : "FAIL") << "  " << rep.preset << " overall\n";
    return rep.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paircav — photon-pair blockade statistics of a single atom in bimodal cavities"};
    app.require_subcommand(1);

    // simulate --config <path>
    auto* simulate = app.add_subcommand("simulate", "run a sweep from a JSON config");
    std::string config_path;
    std::string sim_out = "sweep.csv";
    int sim_workers = 0;
    simulate->add_option("--config", config_path, "JSON sweep configuration")->required();
    simulate->add_option("--out", sim_out, "output CSV path");
    simulate->add_option("--workers", sim_workers, "worker threads (PAIRCAV_WORKERS overrides)");

    // preset <name> [--out <path>] [--workers N] [--nmax K]
    auto* preset = app.add_subcommand("preset", "run a paper-figure preset");
    std::string preset_name;
    std::string preset_out;
    int preset_workers = 0;
    int preset_nmax = 0;
    bool list_presets = false;
    preset->add_option("name", preset_name, "preset name (fig2a .. figS4)");
    preset->add_option("--out", preset_out, "output CSV path (default <name>.csv)");
    preset->add_option("--workers", preset_workers, "worker threads (PAIRCAV_WORKERS overrides)");
    preset->add_option("--nmax", preset_nmax, "Fock cutoff override for both modes");
    preset->add_flag("--list", list_presets, "list preset names and exit");

    // report <dataset>
    auto* report_cmd = app.add_subcommand("report", "evaluate the acceptance checks of a preset CSV");
    std::string dataset_path;
    report_cmd->add_option("dataset", dataset_path, "CSV produced by a preset run")->required();

    // validate-config <path>
    auto* validate = app.add_subcommand("validate-config", "parse and validate a JSON config");
    std::string validate_path;
    validate->add_option("path", validate_path, "JSON sweep configuration")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            paircav::SweepConfig config = paircav::config_from_json_text(read_file(config_path));
            if (sim_workers > 0) config.workers = sim_workers;
            const int rc = write_dataset(paircav::run_sweep(config), sim_out);
            if (!config.preset.empty()) write_recipe(config.preset, sim_out);
            return rc;
        }
        if (preset->parsed()) {
            if (list_presets) {
                for (const auto& name : paircav::preset_names()) std::cout << name << "\n";
                return 0;
            }
            if (preset_name.empty()) throw paircav::ConfigError("preset: missing name");
            paircav::SweepConfig config = paircav::figure_preset(preset_name);
            if (preset_workers > 0) config.workers = preset_workers;
            if (preset_nmax > 0) config.cutoffs = paircav::HilbertDims(preset_nmax, preset_nmax);
            const std::string out_path = preset_out.empty() ? preset_name + ".csv" : preset_out;
            const int rc = write_dataset(paircav::run_sweep(config), out_path);
            write_recipe(preset_name, out_path);
            return rc;
        }
        if (report_cmd->parsed()) {
            std::ifstream in(dataset_path);
            if (!in) throw paircav::ConfigError("cannot open '" + dataset_path + "'");
            const paircav::SweepDataset dataset = paircav::read_csv(in);
            return print_report(paircav::report(dataset));
        }
        if (validate->parsed()) {
            paircav::config_from_json_text(read_file(validate_path));
            std::cout << "OK " << validate_path << "\n";
            return 0;
        }
    } catch (const paircav::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const paircav::UnknownPreset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const paircav::Error& e) {
        std::cerr << "error [" << e.tag() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
