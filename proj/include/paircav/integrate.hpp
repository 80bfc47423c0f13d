// integrate.hpp — adaptive Dormand–Prince 5(4) integrator for linear ODEs on
// complex vectors. Generic over the right-hand side so tests can drive it with
// anything that computes dy = f(y).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "paircav/errors.hpp"
#include "paircav/hilbert.hpp"

namespace paircav {

struct OdeOptions {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    double initial_step{1e-3};
    std::int64_t max_steps{50'000'000};
};

// Integrates dy/dt = rhs(y) from t0 to t1 (t1 >= t0). rhs(y, dy) fills dy.
template <typename Rhs>
Vector integrate_ode(Rhs&& rhs, Vector y, double t0, double t1, const OdeOptions& opts = {}) {
    if (t1 < t0) throw IntegrationError("integrate_ode: backwards integration not supported");
    if (t1 == t0) return y;

    const Eigen::Index n = y.size();
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);

    double t = t0;
    double h = std::min(opts.initial_step, t1 - t0);
    const double h_min = std::max(1e-14, 1e-14 * (t1 - t0));

    rhs(y, k1);  // FSAL: k1 carries over from the previous accepted step

    for (std::int64_t step = 0; step < opts.max_steps; ++step) {
        if (t >= t1) return y;
        h = std::min(h, t1 - t);

        ytmp = y + h * (1.0 / 5.0) * k1;
        rhs(ytmp, k2);
        ytmp = y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2);
        rhs(ytmp, k3);
        ytmp = y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3);
        rhs(ytmp, k4);
        ytmp = y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                        (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4);
        rhs(ytmp, k5);
        ytmp = y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 + (46732.0 / 5247.0) * k3 +
                        (49.0 / 176.0) * k4 - (5103.0 / 18656.0) * k5);
        rhs(ytmp, k6);
        y5 = y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 -
                      (2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
        rhs(y5, k7);

        // embedded 4th-order error estimate
        const Vector err = h * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1 +
                                (500.0 / 1113.0 - 7571.0 / 16695.0) * k3 +
                                (125.0 / 192.0 - 393.0 / 640.0) * k4 +
                                (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5 +
                                (11.0 / 84.0 - 187.0 / 2100.0) * k6 - (1.0 / 40.0) * k7);

        double scaled = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double tol = opts.abs_tol + opts.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            scaled = std::max(scaled, std::abs(err(i)) / tol);
        }

        if (scaled <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);
        }

        double factor = 5.0;
        if (!std::isfinite(scaled)) factor = 0.2;  // overflowed trial step: back off hard
        else if (scaled > 0.0) factor = 0.9 * std::pow(scaled, -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < h_min)
            throw IntegrationError("integrate_ode: step size underflow at t = " + std::to_string(t) +
                                   " (h = " + std::to_string(h) + ")");
    }
    throw IntegrationError("integrate_ode: exceeded max step count before t = " + std::to_string(t1));
}

}  // namespace paircav
