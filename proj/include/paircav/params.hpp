// params.hpp — parameter sets of the effective model, the dissipation channels,
// and the microscopic (pre-elimination) level scheme. All rates in units of kappa.

#pragma once

#include <string>
#include <vector>

namespace paircav {

// Absolute scale: kappa = 2*pi*800 kHz. Display metadata only; every rate in
// the library is expressed in units of kappa = 1.
inline constexpr double kKappaPhysicalHz = 800.0e3;

// Symbols of the effective Hamiltonian. u_a/u_b are the optical Stark shifts,
// g the cavity two-photon coupling, omega the atomic pump, eta/theta the
// amplitude and (gauge-invariant) phase of the cavity drive.
struct EffectiveParams {
    double delta_a{0.0};
    double delta_b{0.0};
    double delta_r{0.0};
    double u_a{0.0};
    double u_b{0.0};
    double g{0.0};
    double omega{0.0};
    double eta{0.0};
    double theta{0.0};

    // Stark-shift difference U0 = Ua - Ub; sets the spectrum anharmonicity.
    double u0() const { return u_a - u_b; }
};

struct DissipationParams {
    double kappa_a{1.0};
    double kappa_b{1.0};
    double gamma{0.0};    // spontaneous emission of |r>
    double gamma_d{0.0};  // pure dephasing of |r>

    // Heuristic single-kappa stand-in for the kappa_a != kappa_b case.
    double kappa_mean() const { return 0.5 * (kappa_a + kappa_b); }
};

// Pre-elimination parameters of the four-level scheme. delta_1/delta_3 must be
// nonzero (the elimination divides by them). delta_r and theta pass through.
struct MicroscopicParams {
    double g_a{0.0};
    double g_b{0.0};
    double g_b_prime{0.0};
    double omega_1{0.0};
    double omega_2{0.0};
    double omega_3{0.0};
    double delta_1{0.0};
    double delta_2{0.0};
    double delta_3{0.0};
    double delta_small_a{0.0};  // bare cavity detuning delta_a
    double delta_small_b{0.0};  // bare cavity detuning delta_b
    double delta_r{0.0};
    double theta{0.0};
};

struct OperatingPoint {
    EffectiveParams effective;
    DissipationParams dissipation;
};

// Operating point quoted in the paper, kappa = 1 units: g = 2, omega = 0.1,
// gamma = gamma_d = 0.01, delta_b = delta_a, delta_r = 2*delta_a, and
// u_b = g^2 / u_a so that Ua*Ub = g^2. eta starts at 0 (interference off).
OperatingPoint default_operating_point(double u_a = 4.0, double delta_a = 0.0);

// Effective parameters from the microscopic set:
//   g = -ga*gb/D1, omega = -O1*O2/D1, eta = O3*ga*gb'/(D1*D3),
//   u_a = -ga^2/D1, u_b = -gb^2/D1, delta_a = da - ga^2/D1, delta_b = db.
EffectiveParams effective_from_microscopic(const MicroscopicParams& m);

// Dispersive-regime and rotating-wave sanity checks. One warning string per
// violated ratio |detuning| / max coupling < ratio_threshold. Empty = trusted.
std::vector<std::string> validate_regime(const MicroscopicParams& m, double ratio_threshold = 10.0);

}  // namespace paircav
