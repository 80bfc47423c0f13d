#include "paircav/params.hpp"

#include <algorithm>
#include <cmath>

#include "paircav/errors.hpp"

namespace paircav {

OperatingPoint default_operating_point(double u_a, double delta_a) {
    if (u_a == 0.0) throw SingularParameter("default_operating_point: u_a must be nonzero (u_b = g^2/u_a)");
    OperatingPoint pt;
    EffectiveParams& p = pt.effective;
    p.g = 2.0;
    p.omega = 0.1;
    p.u_a = u_a;
    p.u_b = p.g * p.g / u_a;
    p.delta_a = delta_a;
    p.delta_b = delta_a;
    p.delta_r = 2.0 * delta_a;
    p.eta = 0.0;
    p.theta = 0.0;

    DissipationParams& d = pt.dissipation;
    d.kappa_a = 1.0;
    d.kappa_b = 1.0;
    d.gamma = 0.01;
    d.gamma_d = 0.01;
    return pt;
}

EffectiveParams effective_from_microscopic(const MicroscopicParams& m) {
    if (m.delta_1 == 0.0 || m.delta_3 == 0.0)
        throw SingularParameter("effective_from_microscopic: delta_1 and delta_3 must be nonzero");
    EffectiveParams p;
    p.g = -m.g_a * m.g_b / m.delta_1;
    p.omega = -m.omega_1 * m.omega_2 / m.delta_1;
    p.eta = m.omega_3 * m.g_a * m.g_b_prime / (m.delta_1 * m.delta_3);
    p.u_a = -m.g_a * m.g_a / m.delta_1;
    p.u_b = -m.g_b * m.g_b / m.delta_1;
    p.delta_a = m.delta_small_a - m.g_a * m.g_a / m.delta_1;
    p.delta_b = m.delta_small_b;
    p.delta_r = m.delta_r;
    p.theta = m.theta;
    return p;
}

namespace {

double max_abs(std::initializer_list<double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

void check_ratio(std::vector<std::string>& warnings, const std::string& name, double detuning,
                 double coupling, double threshold) {
    if (coupling <= 0.0) return;  // nothing to compare against
    const double ratio = std::abs(detuning) / coupling;
    if (ratio < threshold) {
        warnings.push_back(name + " ratio " + std::to_string(ratio) + " below threshold " +
                           std::to_string(threshold) + "; adiabatic elimination untrusted");
    }
}

}  // namespace

std::vector<std::string> validate_regime(const MicroscopicParams& m, double ratio_threshold) {
    std::vector<std::string> warnings;
    const double coupling = max_abs({m.g_a, m.g_b, m.omega_1, m.omega_2, m.omega_3});
    check_ratio(warnings, "|delta_1| / coupling", m.delta_1, coupling, ratio_threshold);
    check_ratio(warnings, "|delta_2| / coupling", m.delta_2, coupling, ratio_threshold);
    check_ratio(warnings, "|delta_3| / coupling", m.delta_3, coupling, ratio_threshold);
    // rotating-wave condition: |delta_1 - delta_2| large against {ga, gb, O1, O2}
    const double rw_coupling = max_abs({m.g_a, m.g_b, m.omega_1, m.omega_2});
    check_ratio(warnings, "|delta_1 - delta_2| / coupling (rotating wave)", m.delta_1 - m.delta_2,
                rw_coupling, ratio_threshold);
    return warnings;
}

}  // namespace paircav
