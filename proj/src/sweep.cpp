#include "paircav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "paircav/errors.hpp"
#include "paircav/lindblad.hpp"
#include "paircav/model.hpp"
#include "paircav/observables.hpp"

namespace paircav {

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
        out[i] = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    return out;
}

std::vector<double> logspace(double lo, double hi, int points) {
    std::vector<double> out = linspace(std::log10(lo), std::log10(hi), points);
    for (double& x : out) x = std::pow(10.0, x);
    return out;
}

const std::vector<std::string>& effective_fields() {
    static const std::vector<std::string> fields = {"delta_a", "delta_b", "delta_r", "u_a", "u_b",
                                                    "g",       "omega",   "eta",     "theta"};
    return fields;
}

const std::vector<std::string>& dissipation_fields() {
    static const std::vector<std::string> fields = {"kappa_a", "kappa_b", "gamma", "gamma_d"};
    return fields;
}

bool is_param_name(const std::string& name) {
    const auto& e = effective_fields();
    const auto& d = dissipation_fields();
    return std::find(e.begin(), e.end(), name) != e.end() ||
           std::find(d.begin(), d.end(), name) != d.end();
}

void set_param(EffectiveParams& p, DissipationParams& d, const std::string& name, double value) {
    if (name == "delta_a") p.delta_a = value;
    else if (name == "delta_b") p.delta_b = value;
    else if (name == "delta_r") p.delta_r = value;
    else if (name == "u_a") p.u_a = value;
    else if (name == "u_b") p.u_b = value;
    else if (name == "g") p.g = value;
    else if (name == "omega") p.omega = value;
    else if (name == "eta") p.eta = value;
    else if (name == "theta") p.theta = value;
    else if (name == "kappa_a") d.kappa_a = value;
    else if (name == "kappa_b") d.kappa_b = value;
    else if (name == "gamma") d.gamma = value;
    else if (name == "gamma_d") d.gamma_d = value;
    else throw ConfigError("unknown parameter name '" + name + "'");
}

const std::set<std::string>& known_outputs() {
    static const std::set<std::string> names = {"n_s_a",     "n_s_b",     "g2_aa",
                                                "g2_bb",     "g2_ab",     "gamma_param",
                                                "g2_aa_tau", "g2_bb_tau", "g2_ab_tau"};
    return names;
}

bool is_tau_output(const std::string& name) { return name.size() > 4 && name.ends_with("_tau"); }

}  // namespace

std::vector<double> AxisSpec::grid() const {
    if (!values.empty()) return values;
    if (spacing == Spacing::Log) return logspace(min, max, points);
    return linspace(min, max, points);
}

std::vector<double> TauGridSpec::grid() const {
    if (spacing == Spacing::Linear) return linspace(min, max, points);
    if (min > 0.0) return logspace(min, max, points);
    // log spacing from zero: {0} then a decade ladder up to max
    std::vector<double> out;
    out.reserve(points);
    out.push_back(0.0);
    const std::vector<double> tail = logspace(max / 1000.0, max, points - 1);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

namespace {

void validate_axis(const AxisSpec& axis, const char* which) {
    const std::string where = std::string(which) + " (" + axis.parameter + ")";
    if (!is_param_name(axis.parameter))
        throw ConfigError(where + ": not a parameter field");
    if (!axis.values.empty()) {
        if (axis.values.size() < 2) throw ConfigError(where + ": need at least 2 values");
        return;
    }
    if (axis.points < 2) throw ConfigError(where + ": point count must be >= 2");
    if (axis.spacing == Spacing::Log && (axis.min <= 0.0 || axis.max <= 0.0))
        throw ConfigError(where + ": log spacing needs positive endpoints");
}

}  // namespace

void validate_config(const SweepConfig& config) {
    validate_axis(config.axis_1, "axis_1");
    if (config.axis_2) {
        validate_axis(*config.axis_2, "axis_2");
        if (config.axis_2->parameter == config.axis_1.parameter)
            throw ConfigError("axis_2 sweeps the same parameter as axis_1");
    }
    const bool eta_on_axis = config.axis_1.parameter == "eta" ||
                             (config.axis_2 && config.axis_2->parameter == "eta");
    if (eta_on_axis && config.interference.mode == InterferenceMode::Off)
        throw ConfigError("an eta axis requires interference mode explicit or analytic_optimum");

    bool has_tau_output = false;
    for (const std::string& name : config.outputs) {
        if (!known_outputs().count(name)) throw ConfigError("unknown output '" + name + "'");
        if (is_tau_output(name)) {
            has_tau_output = true;
            if (!config.tau_grid) throw ConfigError("output '" + name + "' needs a tau_grid");
        }
    }
    if (config.tau_grid) {
        if (!has_tau_output)
            throw ConfigError("tau_grid present but no g2_*_tau output requested");
        if (config.tau_grid->points < 2 || config.tau_grid->max <= 0.0 || config.tau_grid->min < 0.0)
            throw ConfigError("tau_grid: need points >= 2 and 0 <= min < max");
        if (config.tau_grid->min >= config.tau_grid->max)
            throw ConfigError("tau_grid: need min < max");
    }
    if (config.workers < 0) throw ConfigError("workers must be >= 0");
}

namespace {

struct ResolvedPoint {
    EffectiveParams effective;
    DissipationParams dissipation;
};

bool axis_names(const SweepConfig& config, const std::string& field) {
    return config.axis_1.parameter == field ||
           (config.axis_2 && config.axis_2->parameter == field);
}

ResolvedPoint resolve_point(const SweepConfig& config,
                            const std::vector<std::pair<std::string, double>>& assignments) {
    ResolvedPoint point{config.base_effective, config.base_dissipation};
    EffectiveParams& p = point.effective;
    DissipationParams& d = point.dissipation;
    for (const auto& [name, value] : assignments) set_param(p, d, name, value);

    if (config.tie_detunings) {
        if (!axis_names(config, "delta_b")) p.delta_b = p.delta_a;
        if (!axis_names(config, "delta_r")) p.delta_r = 2.0 * p.delta_a;
    }
    if (config.tie_stark && !axis_names(config, "u_b")) {
        if (p.u_a == 0.0) throw SingularParameter("tie_stark: u_a = 0 has no u_b = g^2/u_a");
        p.u_b = p.g * p.g / p.u_a;
    }

    switch (config.interference.mode) {
        case InterferenceMode::Off:
            if (!axis_names(config, "eta")) p.eta = 0.0;
            break;
        case InterferenceMode::Explicit:
            if (!axis_names(config, "theta")) p.theta = config.interference.theta;
            if (!axis_names(config, "eta")) p.eta = config.interference.eta;
            break;
        case InterferenceMode::AnalyticOptimum: {
            const InterferenceOptimum opt = interference_optimum(p, d);
            if (!axis_names(config, "theta")) p.theta = opt.theta;
            if (!axis_names(config, "eta")) p.eta = opt.eta;
            break;
        }
    }
    return point;
}

// population left in the top Fock layer; the truncation-adequacy flag
double tail_population(const Matrix& rho, const HilbertDims& dims) {
    double tail = 0.0;
    for (int na = 0; na <= dims.n_max_a; ++na)
        for (int nb = 0; nb <= dims.n_max_b; ++nb) {
            if (na != dims.n_max_a && nb != dims.n_max_b) continue;
            for (AtomLevel s : {AtomLevel::g, AtomLevel::r}) {
                const int i = dims.index(na, nb, s);
                tail += rho(i, i).real();
            }
        }
    return tail;
}

bool wants(const SweepConfig& config, const std::string& name) {
    return std::find(config.outputs.begin(), config.outputs.end(), name) != config.outputs.end();
}

std::vector<ResultRow> compute_point(const SweepConfig& config,
                                     const std::vector<std::pair<std::string, double>>& assignments,
                                     const std::vector<double>& axis_values) {
    ResultRow row;
    row.axis_values = axis_values;
    try {
        const ResolvedPoint point = resolve_point(config, assignments);
        row.theta_used = point.effective.theta;
        row.eta_used = point.effective.eta;

        const HilbertDims dims = config.cutoffs;
        const Matrix h = build_hamiltonian(point.effective, dims);
        const SparseMatrix liouvillian =
            build_liouvillian(h, standard_channels(point.dissipation, dims));
        const Matrix rho = steady_state(liouvillian);

        row.n_s_a = photon_number(rho, Mode::A, dims);
        row.n_s_b = photon_number(rho, Mode::B, dims);
        row.converged = tail_population(rho, dims) < 1e-8;

        const NonclassicalityReport nc = cauchy_schwarz_gamma(rho, dims);
        row.g2_aa = nc.g2_aa;
        row.g2_bb = nc.g2_bb;
        row.g2_ab = nc.g2_ab;
        if (nc.gamma_defined)
            row.gamma_param = nc.gamma_param;
        else if (wants(config, "gamma_param"))
            row.error = "undefined-correlation";

        if (!config.tau_grid) return {row};

        const std::vector<double> taus = config.tau_grid->grid();
        std::vector<ResultRow> rows(taus.size(), row);
        for (std::size_t i = 0; i < taus.size(); ++i) rows[i].tau = taus[i];
        const auto fill = [&](const char* name, Mode o, Mode o2,
                              std::optional<double> ResultRow::* member) {
            if (!wants(config, name)) return;
            const auto series = g2_tau(liouvillian, rho, o, o2, taus, dims);
            for (std::size_t i = 0; i < taus.size(); ++i) rows[i].*member = series[i].value;
        };
        fill("g2_aa_tau", Mode::A, Mode::A, &ResultRow::g2_aa_tau);
        fill("g2_bb_tau", Mode::B, Mode::B, &ResultRow::g2_bb_tau);
        fill("g2_ab_tau", Mode::A, Mode::B, &ResultRow::g2_ab_tau);
        return rows;
    } catch (const Error& e) {
        row.error = e.tag();
    } catch (const std::exception&) {
        row.error = "internal-error";
    }
    return {row};
}

int resolve_workers(const SweepConfig& config, int n_points) {
    int workers = 0;
    if (const char* env = std::getenv("PAIRCAV_WORKERS")) {
        workers = std::atoi(env);
    }
    if (workers <= 0) workers = config.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    return std::min(workers, std::max(1, n_points));
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> dataset_columns(const SweepConfig& config) {
    std::vector<std::string> columns = {"preset", config.axis_1.parameter};
    if (config.axis_2) columns.push_back(config.axis_2->parameter);
    if (config.tau_grid) columns.push_back("tau");
    columns.insert(columns.end(), {"n_s_a", "n_s_b", "g2_aa", "g2_bb", "g2_ab", "gamma_param"});
    for (const char* name : {"g2_aa_tau", "g2_bb_tau", "g2_ab_tau"})
        if (wants(config, name)) columns.push_back(name);
    columns.insert(columns.end(), {"theta_used", "eta_used", "converged", "error"});
    return columns;
}

}  // namespace

SweepDataset run_sweep(const SweepConfig& config) {
    validate_config(config);

    const std::vector<double> grid1 = config.axis_1.grid();
    const std::vector<double> grid2 = config.axis_2 ? config.axis_2->grid() : std::vector<double>{};
    const int n1 = static_cast<int>(grid1.size());
    const int n2 = config.axis_2 ? static_cast<int>(grid2.size()) : 1;
    const int n_points = n1 * n2;

    std::vector<std::vector<ResultRow>> results(n_points);
    parallel_for(n_points, resolve_workers(config, n_points), [&](int index) {
        const int i1 = index / n2;
        const int i2 = index % n2;
        std::vector<std::pair<std::string, double>> assignments{{config.axis_1.parameter, grid1[i1]}};
        std::vector<double> axis_values{grid1[i1]};
        if (config.axis_2) {
            assignments.emplace_back(config.axis_2->parameter, grid2[i2]);
            axis_values.push_back(grid2[i2]);
        }
        results[index] = compute_point(config, assignments, axis_values);
    });

    SweepDataset dataset;
    dataset.config = config;
    dataset.columns = dataset_columns(config);
    for (auto& point_rows : results)
        for (auto& row : point_rows) dataset.rows.push_back(std::move(row));
    return dataset;
}

// ---------------------------------- CSV -------------------------------------

namespace {

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_cell(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string{};
}

}  // namespace

void write_csv(const SweepDataset& dataset, std::ostream& out) {
    for (std::size_t i = 0; i < dataset.columns.size(); ++i)
        out << (i ? "," : "") << dataset.columns[i];
    out << "\n";

    const bool has_axis2 = dataset.config.axis_2.has_value();
    const bool has_tau = dataset.config.tau_grid.has_value();
    for (const ResultRow& row : dataset.rows) {
        out << dataset.config.preset;
        for (double v : row.axis_values) out << "," << format_number(v);
        if (has_axis2 && row.axis_values.size() < 2) out << ",";
        if (has_tau) out << "," << format_cell(row.tau);
        out << "," << format_cell(row.n_s_a) << "," << format_cell(row.n_s_b) << ","
            << format_cell(row.g2_aa) << "," << format_cell(row.g2_bb) << ","
            << format_cell(row.g2_ab) << "," << format_cell(row.gamma_param);
        if (wants(dataset.config, "g2_aa_tau")) out << "," << format_cell(row.g2_aa_tau);
        if (wants(dataset.config, "g2_bb_tau")) out << "," << format_cell(row.g2_bb_tau);
        if (wants(dataset.config, "g2_ab_tau")) out << "," << format_cell(row.g2_ab_tau);
        out << "," << format_number(row.theta_used) << "," << format_number(row.eta_used) << ","
            << (row.converged ? "true" : "false") << "," << row.error << "\n";
    }
}

std::string to_csv(const SweepDataset& dataset) {
    std::ostringstream out;
    write_csv(dataset, out);
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

std::optional<double> parse_cell(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    return std::stod(cell);
}

}  // namespace

SweepDataset read_csv(std::istream& in) {
    SweepDataset dataset;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("read_csv: empty file");
    dataset.columns = split_csv_line(line);

    const auto column = [&](const std::string& name) -> int {
        const auto it = std::find(dataset.columns.begin(), dataset.columns.end(), name);
        return it == dataset.columns.end()
                   ? -1
                   : static_cast<int>(it - dataset.columns.begin());
    };

    // any column that is not a known field is a swept-parameter column
    static const std::set<std::string> fixed = {"preset",      "tau",        "n_s_a",     "n_s_b",
                                               "g2_aa",       "g2_bb",      "g2_ab",     "gamma_param",
                                               "g2_aa_tau",   "g2_bb_tau",  "g2_ab_tau", "theta_used",
                                               "eta_used",    "converged",  "error"};
    std::vector<int> axis_columns;
    for (std::size_t i = 0; i < dataset.columns.size(); ++i)
        if (!fixed.count(dataset.columns[i])) axis_columns.push_back(static_cast<int>(i));
    if (axis_columns.empty()) throw ConfigError("read_csv: no swept-parameter column found");

    dataset.config.axis_1.parameter = dataset.columns[axis_columns[0]];
    if (axis_columns.size() > 1) {
        AxisSpec axis2;
        axis2.parameter = dataset.columns[axis_columns[1]];
        dataset.config.axis_2 = axis2;
    }
    if (column("tau") >= 0) dataset.config.tau_grid = TauGridSpec{};
    for (const char* name : {"g2_aa_tau", "g2_bb_tau", "g2_ab_tau"})
        if (column(name) >= 0) dataset.config.outputs.push_back(name);

    const int c_preset = column("preset");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != dataset.columns.size())
            throw ConfigError("read_csv: row has " + std::to_string(cells.size()) +
                              " cells, header has " + std::to_string(dataset.columns.size()));
        ResultRow row;
        if (c_preset >= 0) dataset.config.preset = cells[c_preset];
        for (int ci : axis_columns)
            if (auto v = parse_cell(cells[ci])) row.axis_values.push_back(*v);
        const auto get = [&](const char* name) -> std::optional<double> {
            const int ci = column(name);
            return ci >= 0 ? parse_cell(cells[ci]) : std::nullopt;
        };
        row.tau = get("tau");
        row.n_s_a = get("n_s_a");
        row.n_s_b = get("n_s_b");
        row.g2_aa = get("g2_aa");
        row.g2_bb = get("g2_bb");
        row.g2_ab = get("g2_ab");
        row.gamma_param = get("gamma_param");
        row.g2_aa_tau = get("g2_aa_tau");
        row.g2_bb_tau = get("g2_bb_tau");
        row.g2_ab_tau = get("g2_ab_tau");
        if (auto v = get("theta_used")) row.theta_used = *v;
        if (auto v = get("eta_used")) row.eta_used = *v;
        if (column("converged") >= 0) row.converged = cells[column("converged")] == "true";
        if (column("error") >= 0) row.error = cells[column("error")];
        dataset.rows.push_back(std::move(row));
    }
    return dataset;
}

}  // namespace paircav
