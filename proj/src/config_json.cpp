#include <json.hpp>

#include <string>

#include "paircav/errors.hpp"
#include "paircav/sweep.hpp"

namespace paircav {

namespace {

using nlohmann::json;

Spacing parse_spacing(const std::string& s) {
    if (s == "linear") return Spacing::Linear;
    if (s == "log") return Spacing::Log;
    throw ConfigError("spacing must be 'linear' or 'log', got '" + s + "'");
}

const char* spacing_name(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

AxisSpec parse_axis(const json& j, const char* which) {
    AxisSpec axis;
    if (!j.contains("parameter")) throw ConfigError(std::string(which) + ": missing 'parameter'");
    axis.parameter = j.at("parameter").get<std::string>();
    if (j.contains("values")) {
        axis.values = j.at("values").get<std::vector<double>>();
    } else {
        axis.min = j.at("min").get<double>();
        axis.max = j.at("max").get<double>();
        axis.points = j.value("points", 0);  // 0 = use the default grid size
        if (j.contains("spacing")) axis.spacing = parse_spacing(j.at("spacing").get<std::string>());
    }
    return axis;
}

json axis_to_json(const AxisSpec& axis) {
    json j;
    j["parameter"] = axis.parameter;
    if (!axis.values.empty()) {
        j["values"] = axis.values;
    } else {
        j["min"] = axis.min;
        j["max"] = axis.max;
        j["points"] = axis.points;
        j["spacing"] = spacing_name(axis.spacing);
    }
    return j;
}

void assign_if(const json& j, const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
}

}  // namespace

SweepConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    try {
        SweepConfig config;
        // unspecified base fields default to the standard operating point
        const OperatingPoint defaults = default_operating_point();
        config.base_effective = defaults.effective;
        config.base_dissipation = defaults.dissipation;

        if (j.contains("base")) {
            const json& base = j.at("base");
            if (base.contains("effective")) {
                const json& e = base.at("effective");
                assign_if(e, "delta_a", config.base_effective.delta_a);
                assign_if(e, "delta_b", config.base_effective.delta_b);
                assign_if(e, "delta_r", config.base_effective.delta_r);
                assign_if(e, "u_a", config.base_effective.u_a);
                assign_if(e, "u_b", config.base_effective.u_b);
                assign_if(e, "g", config.base_effective.g);
                assign_if(e, "omega", config.base_effective.omega);
                assign_if(e, "eta", config.base_effective.eta);
                assign_if(e, "theta", config.base_effective.theta);
            }
            if (base.contains("dissipation")) {
                const json& d = base.at("dissipation");
                assign_if(d, "kappa_a", config.base_dissipation.kappa_a);
                assign_if(d, "kappa_b", config.base_dissipation.kappa_b);
                assign_if(d, "gamma", config.base_dissipation.gamma);
                assign_if(d, "gamma_d", config.base_dissipation.gamma_d);
            }
        }

        if (!j.contains("axis_1")) throw ConfigError("missing 'axis_1'");
        config.axis_1 = parse_axis(j.at("axis_1"), "axis_1");
        if (j.contains("axis_2")) config.axis_2 = parse_axis(j.at("axis_2"), "axis_2");

        // default grid sizes: 101 points per axis, 41x41 for two-axis sweeps
        const int default_points = config.axis_2 ? 41 : 101;
        if (config.axis_1.values.empty() && config.axis_1.points == 0)
            config.axis_1.points = default_points;
        if (config.axis_2 && config.axis_2->values.empty() && config.axis_2->points == 0)
            config.axis_2->points = default_points;

        if (j.contains("interference")) {
            const json& i = j.at("interference");
            const std::string mode = i.value("mode", "off");
            if (mode == "off") config.interference.mode = InterferenceMode::Off;
            else if (mode == "analytic_optimum") config.interference.mode = InterferenceMode::AnalyticOptimum;
            else if (mode == "explicit") config.interference.mode = InterferenceMode::Explicit;
            else throw ConfigError("interference mode must be off|analytic_optimum|explicit");
            config.interference.theta = i.value("theta", 0.0);
            config.interference.eta = i.value("eta", 0.0);
        }

        config.tie_detunings = j.value("tie_detunings", true);
        config.tie_stark = j.value("tie_stark", true);

        if (j.contains("cutoffs")) {
            const json& c = j.at("cutoffs");
            config.cutoffs = HilbertDims(c.value("n_max_a", 5), c.value("n_max_b", 5));
        }

        if (j.contains("outputs")) config.outputs = j.at("outputs").get<std::vector<std::string>>();
        if (config.outputs.empty())
            config.outputs = {"n_s_a", "n_s_b", "g2_aa", "g2_bb", "g2_ab", "gamma_param"};

        if (j.contains("tau_grid")) {
            const json& t = j.at("tau_grid");
            TauGridSpec grid;
            grid.min = t.value("min", 0.0);
            grid.max = t.value("max", 10.0);
            grid.points = t.value("points", 200);
            grid.spacing = parse_spacing(t.value("spacing", "log"));
            config.tau_grid = grid;
        }

        config.workers = j.value("workers", 0);
        config.preset = j.value("preset", "");

        validate_config(config);
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

std::string config_to_json_text(const SweepConfig& config) {
    json j;
    j["base"]["effective"] = {
        {"delta_a", config.base_effective.delta_a}, {"delta_b", config.base_effective.delta_b},
        {"delta_r", config.base_effective.delta_r}, {"u_a", config.base_effective.u_a},
        {"u_b", config.base_effective.u_b},         {"g", config.base_effective.g},
        {"omega", config.base_effective.omega},     {"eta", config.base_effective.eta},
        {"theta", config.base_effective.theta}};
    j["base"]["dissipation"] = {{"kappa_a", config.base_dissipation.kappa_a},
                                {"kappa_b", config.base_dissipation.kappa_b},
                                {"gamma", config.base_dissipation.gamma},
                                {"gamma_d", config.base_dissipation.gamma_d}};
    j["axis_1"] = axis_to_json(config.axis_1);
    if (config.axis_2) j["axis_2"] = axis_to_json(*config.axis_2);
    switch (config.interference.mode) {
        case InterferenceMode::Off: j["interference"]["mode"] = "off"; break;
        case InterferenceMode::AnalyticOptimum: j["interference"]["mode"] = "analytic_optimum"; break;
        case InterferenceMode::Explicit:
            j["interference"] = {{"mode", "explicit"},
                                 {"theta", config.interference.theta},
                                 {"eta", config.interference.eta}};
            break;
    }
    j["tie_detunings"] = config.tie_detunings;
    j["tie_stark"] = config.tie_stark;
    j["cutoffs"] = {{"n_max_a", config.cutoffs.n_max_a}, {"n_max_b", config.cutoffs.n_max_b}};
    j["outputs"] = config.outputs;
    if (config.tau_grid) {
        j["tau_grid"] = {{"min", config.tau_grid->min},
                         {"max", config.tau_grid->max},
                         {"points", config.tau_grid->points},
                         {"spacing", spacing_name(config.tau_grid->spacing)}};
    }
    if (config.workers > 0) j["workers"] = config.workers;
    if (!config.preset.empty()) j["preset"] = config.preset;
    return j.dump(2) + "\n";
}

}  // namespace paircav
