#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "paircav/errors.hpp"
#include "paircav/sweep.hpp"

namespace paircav {

// Shape-level regression checks per figure preset. Sideband positions assume
// the presets' g = 2 (delta_a = ±1); thresholds come from the statements the
// figures pin down (dip/peak locations, orderings, the 1e-4 blockade crossing
// at u_a/g = 7.8, the Cauchy-Schwarz bound).

namespace {

constexpr double kRedSideband = 1.0;
constexpr double kBlueSideband = -1.0;

using Getter = std::function<std::optional<double>(const ResultRow&)>;

Getter field(std::optional<double> ResultRow::* member) {
    return [member](const ResultRow& row) { return row.*member; };
}

struct Curve {
    std::vector<double> x;
    std::vector<double> y;

    // empty curves (all points failed) yield NaN so every comparison fails
    static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    // y at the grid point nearest to x0
    double at(double x0) const {
        if (x.empty()) return kNaN;
        std::size_t best = 0;
        for (std::size_t i = 1; i < x.size(); ++i)
            if (std::abs(x[i] - x0) < std::abs(x[best] - x0)) best = i;
        return y[best];
    }

    double x_of_min() const {
        if (y.empty()) return kNaN;
        return x[std::min_element(y.begin(), y.end()) - y.begin()];
    }

    double min() const { return y.empty() ? kNaN : *std::min_element(y.begin(), y.end()); }
    double max() const { return y.empty() ? kNaN : *std::max_element(y.begin(), y.end()); }

    // strictly interior local maxima, as (x, y) pairs sorted by height
    std::vector<std::pair<double, double>> local_maxima() const {
        std::vector<std::pair<double, double>> peaks;
        for (std::size_t i = 1; i + 1 < y.size(); ++i)
            if (y[i] >= y[i - 1] && y[i] >= y[i + 1]) peaks.emplace_back(x[i], y[i]);
        std::sort(peaks.begin(), peaks.end(),
                  [](const auto& a, const auto& b) { return a.second > b.second; });
        return peaks;
    }

    bool monotone(int direction, double rel_slack) const {
        for (std::size_t i = 1; i < y.size(); ++i) {
            const double step = direction * (y[i] - y[i - 1]);
            if (step < -rel_slack * std::max(std::abs(y[i]), std::abs(y[i - 1]))) return false;
        }
        return true;
    }
};

// rows with matching axis-2 value (or all rows), ordered by axis 1
Curve curve(const SweepDataset& dataset, const Getter& get,
            std::optional<double> axis2 = std::nullopt) {
    Curve c;
    for (const ResultRow& row : dataset.rows) {
        if (!row.error.empty()) continue;
        if (axis2 && (row.axis_values.size() < 2 || *axis2 != row.axis_values[1])) continue;
        const auto value = get(row);
        if (!value) continue;
        c.x.push_back(row.axis_values.empty() ? 0.0 : row.axis_values[0]);
        c.y.push_back(*value);
    }
    return c;
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

struct Checker {
    AcceptanceReport& report;

    void add(const std::string& name, bool pass, const std::string& detail) {
        report.checks.push_back({name, pass, detail});
        report.all_pass = report.all_pass && pass;
    }

    void near(const std::string& name, double x, double target, double tol) {
        add(name, std::abs(x - target) <= tol,
            fmt(x) + " vs target " + fmt(target) + " +- " + fmt(tol));
    }

    void less(const std::string& name, double a, double b) {
        add(name, a < b, fmt(a) + " < " + fmt(b));
    }

    void greater(const std::string& name, double a, double b) {
        add(name, a > b, fmt(a) + " > " + fmt(b));
    }
};

void check_pair_symmetry(Checker& ck, const SweepDataset& dataset) {
    double worst = 0.0;
    for (const ResultRow& row : dataset.rows) {
        if (!row.error.empty() || !row.n_s_a || !row.n_s_b) continue;
        worst = std::max(worst, std::abs(*row.n_s_a - *row.n_s_b));
    }
    ck.add("pair photon numbers coincide", worst < 1e-8, "max |n_s_a - n_s_b| = " + fmt(worst));
}

void check_no_point_errors(Checker& ck, const SweepDataset& dataset) {
    std::size_t failed = 0;
    std::string first;
    for (const ResultRow& row : dataset.rows)
        if (!row.error.empty()) {
            if (failed == 0) first = row.error;
            ++failed;
        }
    ck.add("all grid points computed", failed == 0,
           failed == 0 ? "no errors" : std::to_string(failed) + " failed, first: " + first);
}

void check_sideband_dip(Checker& ck, const std::string& name, const Curve& c, double sideband) {
    ck.near(name, c.x_of_min(), sideband, 0.25);
}

void check_fig2_family(Checker& ck, const SweepDataset& dataset, const std::string& preset) {
    if (preset == "fig2a") {
        const Curve aa = curve(dataset, field(&ResultRow::g2_aa));
        const Curve bb = curve(dataset, field(&ResultRow::g2_bb));
        check_sideband_dip(ck, "g2_aa dip at red sideband", aa, kRedSideband);
        check_sideband_dip(ck, "g2_bb dip at blue sideband", bb, kBlueSideband);
        ck.less("red-blue asymmetry of g2_aa", aa.at(kRedSideband), aa.at(kBlueSideband));
    } else if (preset == "fig2b") {
        const Curve bb = curve(dataset, field(&ResultRow::g2_bb));
        check_sideband_dip(ck, "g2_bb dip at blue sideband", bb, kBlueSideband);
        ck.less("asymmetry direction flipped vs fig2a", bb.at(kBlueSideband), bb.at(kRedSideband));
    } else if (preset == "fig2c") {
        const Curve ns = curve(dataset, field(&ResultRow::n_s_a));
        const auto peaks = ns.local_maxima();
        const bool two_peaks = peaks.size() >= 2;
        ck.add("two emission peaks", two_peaks, std::to_string(peaks.size()) + " local maxima");
        if (two_peaks) {
            const double lo = std::min(peaks[0].first, peaks[1].first);
            const double hi = std::max(peaks[0].first, peaks[1].first);
            ck.near("peak at blue sideband", lo, kBlueSideband, 0.25);
            ck.near("peak at red sideband", hi, kRedSideband, 0.25);
            const double imbalance =
                std::abs(peaks[0].second - peaks[1].second) / std::max(peaks[0].second, 1e-300);
            ck.add("peak heights match", imbalance < 0.05,
                   "relative imbalance " + fmt(imbalance));
        }
    } else if (preset == "fig2d") {
        // mode A at the red sideband, mode B at the blue sideband; the curves
        // crest near u_a/g = 1, so the monotone windows start clear of the crest
        const Curve a_red = curve(dataset, field(&ResultRow::g2_aa), kRedSideband);
        const Curve b_blue = curve(dataset, field(&ResultRow::g2_bb), kBlueSideband);
        Curve a_above, b_below;
        for (std::size_t i = 0; i < a_red.x.size(); ++i)
            if (a_red.x[i] >= 3.0) {  // u_a/g >= 1.5
                a_above.x.push_back(a_red.x[i]);
                a_above.y.push_back(a_red.y[i]);
            }
        for (std::size_t i = 0; i < b_blue.x.size(); ++i)
            if (b_blue.x[i] <= 4.0 / 3.0) {  // u_a/g <= 2/3
                b_below.x.push_back(b_blue.x[i]);
                b_below.y.push_back(b_blue.y[i]);
            }
        ck.add("g2_aa(red) falls with u_a above the crest", a_above.monotone(-1, 1e-9),
               "monotone over " + std::to_string(a_above.x.size()) + " points");
        ck.add("g2_bb(blue) falls as u_a decreases below the crest", b_below.monotone(+1, 1e-9),
               "monotone over " + std::to_string(b_below.x.size()) + " points");
        const double cross_a = a_red.at(2.0);
        const double cross_b = b_blue.at(2.0);
        const double mismatch = std::abs(cross_a - cross_b) / std::max(cross_a, 1e-300);
        ck.add("curves meet at u_a/g = 1", mismatch < 0.1, "relative mismatch " + fmt(mismatch));
    }
}

void check_fig3(Checker& ck, const SweepDataset& dataset, const std::string& preset) {
    if (preset == "fig3a") {
        double best = std::numeric_limits<double>::infinity();
        double best_delta = 0.0;
        for (const ResultRow& row : dataset.rows) {
            if (!row.error.empty() || !row.g2_aa) continue;
            if (*row.g2_aa < best) {
                best = *row.g2_aa;
                best_delta = row.axis_values[0];
            }
        }
        ck.less("strong blockade region exists", best, 0.01);
        ck.less("strongest blockade on the blue side", best_delta, 0.0);
    } else {  // fig3b
        double sum_red = 0.0, sum_blue = 0.0, peak = 0.0;
        for (const ResultRow& row : dataset.rows) {
            if (!row.error.empty() || !row.n_s_a) continue;
            (row.axis_values[0] > 0.0 ? sum_red : sum_blue) += *row.n_s_a;
            peak = std::max(peak, *row.n_s_a);
        }
        const double asym = std::abs(sum_red - sum_blue) / std::max(sum_red + sum_blue, 1e-300);
        ck.add("emission plane asymmetric in the detuning sign", asym > 0.05,
               "half-plane imbalance " + fmt(asym));
        ck.greater("sizable emission somewhere in the plane", peak, 0.01);
    }
}

void check_fig4(Checker& ck, const SweepDataset& dataset, const std::string& preset) {
    if (preset == "fig4a") {
        const Curve aa = curve(dataset, field(&ResultRow::g2_aa));
        Curve blue, red;
        for (std::size_t i = 0; i < aa.x.size(); ++i) {
            Curve& side = aa.x[i] < 0.0 ? blue : red;
            side.x.push_back(aa.x[i]);
            side.y.push_back(aa.y[i]);
        }
        ck.less("strong blockade on the blue side", blue.min(), 0.02);
        ck.less("blue-side blockade deeper than red", blue.min(), red.min());
    } else if (preset == "fig4b") {
        const Curve ns = curve(dataset, field(&ResultRow::n_s_a));
        ck.greater("emission grows at the red sideband", ns.at(kRedSideband), ns.at(kBlueSideband));
    } else if (preset == "fig4c") {
        // first tau block only; the second block duplicates it
        Curve c;
        for (const ResultRow& row : dataset.rows) {
            if (!row.error.empty() || !row.tau || !row.g2_aa_tau) continue;
            if (!c.x.empty() && *row.tau <= c.x.back()) break;  // next block starts
            c.x.push_back(*row.tau);
            c.y.push_back(*row.g2_aa_tau);
        }
        const bool have = c.x.size() > 2 && c.x.front() == 0.0;
        ck.add("tau grid present", have, std::to_string(c.x.size()) + " points");
        if (have) {
            const double g20 = c.y.front();
            ck.add("blockade depth g2(0) ~ 0.01", g20 > 0.005 && g20 < 0.02, "g2(0) = " + fmt(g20));
            // the strict inequality is known to fail for tau below ~0.4/kappa,
            // where the conditional state Rabi-dips under g2(0); reported as-is
            const double later_min = *std::min_element(c.y.begin() + 1, c.y.end());
            ck.less("antibunched: g2(0) below every g2(tau)", g20, later_min);
            double recovered_min = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < c.x.size(); ++i)
                if (c.x[i] >= 1.0) recovered_min = std::min(recovered_min, c.y[i]);
            ck.less("antibunched past the conditional Rabi dip (tau >= 1)", g20, recovered_min);
        }
    } else if (preset == "fig4d") {
        // dephasing immunity at the blue sideband across the gamma_d curves
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const ResultRow& row : dataset.rows) {
            if (!row.error.empty() || !row.g2_aa || row.axis_values.size() < 2) continue;
            if (std::abs(row.axis_values[0] - kBlueSideband) > 0.05) continue;
            lo = std::min(lo, *row.g2_aa);
            hi = std::max(hi, *row.g2_aa);
        }
        ck.add("g2_aa immune to weak dephasing", hi < 2.0 * lo,
               "spread " + fmt(hi / std::max(lo, 1e-300)) + "x at the blue sideband");
    } else if (preset == "fig4e") {
        const Curve aa = curve(dataset, field(&ResultRow::g2_aa));
        double crossing = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < aa.x.size(); ++i)
            if (aa.y[i] < 1e-4) {
                crossing = aa.x[i] / 2.0;  // in units of g
                break;
            }
        ck.add("g2_aa crosses 1e-4 near u_a/g = 7.8", crossing >= 7.3 && crossing <= 8.3,
               "crossing at u_a/g = " + fmt(crossing));
        bool deep_tail = true;
        for (std::size_t i = 0; i < aa.x.size(); ++i)
            if (aa.x[i] / 2.0 > 7.8 && aa.y[i] >= 1e-4) deep_tail = false;
        ck.add("g2_aa below 1e-4 for all rows past u_a/g = 7.8", deep_tail, "checked u_a/g > 7.8");
    } else if (preset == "fig4f") {
        const Curve ns = curve(dataset, field(&ResultRow::n_s_a));
        ck.add("n_s_a grows monotonically with u_a", ns.monotone(+1, 1e-9),
               std::to_string(ns.x.size()) + " points");
    }
}

void check_fig5(Checker& ck, const SweepDataset& dataset, const std::string& preset) {
    if (preset == "fig5a") {
        const Curve ab = curve(dataset, field(&ResultRow::g2_ab));
        ck.greater("cross-correlation far above 1", ab.min(), 1.0);
        ck.less("well at the blue sideband", ab.at(kBlueSideband), ab.at(0.0));
        ck.less("well at the red sideband", ab.at(kRedSideband), ab.at(0.0));
    } else {  // fig5b
        const Curve gamma = curve(dataset, field(&ResultRow::gamma_param));
        bool violated_near_sidebands = true;
        for (std::size_t i = 0; i < gamma.x.size(); ++i) {
            const bool near_sideband = std::abs(gamma.x[i] - kRedSideband) <= 0.2 ||
                                       std::abs(gamma.x[i] - kBlueSideband) <= 0.2;
            if (near_sideband && gamma.y[i] <= 1.0) violated_near_sidebands = false;
        }
        ck.add("Cauchy-Schwarz violated around both sidebands", violated_near_sidebands,
               "Gamma > 1 within 0.2 of both sidebands");
        ck.greater("peak nonclassicality", gamma.max(), 10.0);
    }
}

void check_appendix(Checker& ck, const SweepDataset& dataset, const std::string& preset) {
    const std::vector<double> kappas = {0.5, 1.0, 2.0};
    if (preset == "figS2") {
        std::vector<double> peak_ns, g2_blue, g2_red;
        for (double kb : kappas) {
            const Curve ns = curve(dataset, field(&ResultRow::n_s_a), kb);
            const Curve aa = curve(dataset, field(&ResultRow::g2_aa), kb);
            const auto peaks = ns.local_maxima();
            ck.add("n_s_a keeps two peaks (kappa_b = " + fmt(kb) + ")", peaks.size() >= 2,
                   std::to_string(peaks.size()) + " maxima");
            peak_ns.push_back(ns.max());
            g2_blue.push_back(aa.at(kBlueSideband));
            g2_red.push_back(aa.at(kRedSideband));
        }
        // directions follow the model equations (a faster-decaying partner mode
        // throttles the pair conversion): photon numbers fall and g2 rises with kappa_b
        ck.add("peak n_s_a falls as kappa_b grows",
               peak_ns[0] > peak_ns[1] && peak_ns[1] > peak_ns[2],
               fmt(peak_ns[0]) + " > " + fmt(peak_ns[1]) + " > " + fmt(peak_ns[2]));
        ck.add("sideband g2_aa grows with kappa_b",
               g2_blue[0] < g2_blue[1] && g2_blue[1] < g2_blue[2] && g2_red[0] < g2_red[1] &&
                   g2_red[1] < g2_red[2],
               "checked both sidebands");
    } else {  // figS4
        std::vector<double> g2_blue, ns_red;
        for (double kb : kappas) {
            const Curve aa = curve(dataset, field(&ResultRow::g2_aa), kb);
            const Curve ns = curve(dataset, field(&ResultRow::n_s_a), kb);
            g2_blue.push_back(aa.at(kBlueSideband));
            ns_red.push_back(ns.at(kRedSideband));
        }
        ck.add("blue-sideband antibunching strengthens as kappa_b shrinks",
               g2_blue[0] < g2_blue[1] && g2_blue[1] < g2_blue[2],
               fmt(g2_blue[0]) + " < " + fmt(g2_blue[1]) + " < " + fmt(g2_blue[2]));
        ck.add("red-sideband emission grows as kappa_b shrinks",
               ns_red[0] > ns_red[1] && ns_red[1] > ns_red[2],
               fmt(ns_red[0]) + " > " + fmt(ns_red[1]) + " > " + fmt(ns_red[2]));
    }
}

}  // namespace

AcceptanceReport report(const SweepDataset& dataset) {
    AcceptanceReport out;
    out.preset = dataset.config.preset;

    if (dataset.rows.empty()) {
        out.warnings.push_back("dataset is empty: vacuous pass");
        return out;
    }
    if (out.preset.empty()) {
        out.warnings.push_back("dataset carries no preset name: no checks apply");
        return out;
    }

    Checker ck{out};
    check_no_point_errors(ck, dataset);

    const std::string& p = out.preset;
    const bool symmetric_decays = p != "figS2" && p != "figS4";
    if (symmetric_decays) check_pair_symmetry(ck, dataset);

    if (p.starts_with("fig2")) check_fig2_family(ck, dataset, p);
    else if (p.starts_with("fig3")) check_fig3(ck, dataset, p);
    else if (p.starts_with("fig4")) check_fig4(ck, dataset, p);
    else if (p.starts_with("fig5")) check_fig5(ck, dataset, p);
    else if (p == "figS2" || p == "figS4") check_appendix(ck, dataset, p);
    else out.warnings.push_back("unknown preset '" + p + "': only generic checks ran");

    return out;
}

}  // namespace paircav
