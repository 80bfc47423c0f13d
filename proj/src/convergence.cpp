#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "paircav/errors.hpp"
#include "paircav/lindblad.hpp"
#include "paircav/model.hpp"
#include "paircav/observables.hpp"

namespace paircav {

namespace {

struct PointObservables {
    double n_s_a{0.0};
    std::optional<double> g2_aa;
};

PointObservables observables_at_cutoff(const EffectiveParams& p, const DissipationParams& d,
                                       int n_max) {
    const HilbertDims dims(n_max, n_max);
    const Matrix h = build_hamiltonian(p, dims);
    const SparseMatrix liouvillian = build_liouvillian(h, standard_channels(d, dims));
    const Matrix rho = steady_state(liouvillian);
    PointObservables obs;
    obs.n_s_a = photon_number(rho, Mode::A, dims);
    try {
        obs.g2_aa = g2_equal_time(rho, Mode::A, Mode::A, dims);
    } catch (const UndefinedCorrelation&) {
        // undriven points have no occupation; leave g2 unset
    }
    return obs;
}

double relative_delta(double a, double b) {
    return std::abs(b - a) / std::max({std::abs(a), std::abs(b), 1e-12});
}

}  // namespace

ConvergenceReport convergence_check(const EffectiveParams& p, const DissipationParams& d,
                                    const std::vector<int>& cutoffs, double tol) {
    if (cutoffs.size() < 2 || !std::is_sorted(cutoffs.begin(), cutoffs.end()))
        throw ConfigError("convergence_check: need a sorted list of at least two cutoffs");

    ConvergenceReport report;
    report.tol = tol;

    PointObservables prev = observables_at_cutoff(p, d, cutoffs.front());
    for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        const PointObservables next = observables_at_cutoff(p, d, cutoffs[i]);
        ConvergenceStep step;
        step.n_max_from = cutoffs[i - 1];
        step.n_max_to = cutoffs[i];
        step.ns_delta = relative_delta(prev.n_s_a, next.n_s_a);
        if (prev.g2_aa && next.g2_aa)
            step.g2_delta = relative_delta(*prev.g2_aa, *next.g2_aa);
        else if (prev.g2_aa.has_value() != next.g2_aa.has_value())
            step.g2_delta = std::numeric_limits<double>::infinity();
        report.steps.push_back(step);
        prev = next;
    }

    // converged at the first cutoff whose step — and every later step — is below tol
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const bool tail_ok = std::all_of(report.steps.begin() + i, report.steps.end(),
                                         [tol](const ConvergenceStep& s) {
                                             return s.ns_delta < tol && s.g2_delta < tol;
                                         });
        if (tail_ok) {
            report.converged = true;
            report.converged_at = report.steps[i].n_max_from;
            break;
        }
    }
    return report;
}

}  // namespace paircav
