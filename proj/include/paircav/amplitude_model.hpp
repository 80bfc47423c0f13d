// amplitude_model.hpp — truncated-wavefunction amplitude equations (pair ladder
// up to two excitations). Independent analytic counterpart to the full master
// equation; its steady state defines the destructive-interference check.

#pragma once

#include <complex>

#include "paircav/params.hpp"

namespace paircav {

// Amplitudes C_{n,n,g} / C_{n,n,r} of |psi> = sum_n C_{n,n,g}|n,n,g> + C_{n,n,r}|n,n,r>,
// truncated at the two-photon pair.
struct AmplitudeState {
    std::complex<double> c00g{0.0};
    std::complex<double> c11g{0.0};
    std::complex<double> c22g{0.0};
    std::complex<double> c00r{0.0};
    std::complex<double> c11r{0.0};
};

// Time derivative of the amplitudes, complex detunings
// dta = 2*da - i*2*kappa, dtr = 2*da - i*gamma (kappa = mean cavity decay).
// Pure dephasing does not enter these equations.
AmplitudeState amplitude_rhs(const AmplitudeState& s, const EffectiveParams& p,
                             const DissipationParams& d);

// Steady amplitudes under the undepleted-ground closure c00g = 1 (the drive-free
// system is homogeneous; fixing the ground amplitude makes it a driven solve).
AmplitudeState amplitude_steady(const EffectiveParams& p, const DissipationParams& d);

// |c22g| / |c11g| of the steady state with theta/eta replaced by the analytic
// optimum; ~0 iff the interference conditions (and their branch) are right.
double verify_interference(const EffectiveParams& p, const DissipationParams& d);

}  // namespace paircav
