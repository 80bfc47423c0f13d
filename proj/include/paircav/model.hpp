// model.hpp — effective pair-conversion Hamiltonian, its closed-form dressed
// spectrum, and the destructive-interference optimum of the cavity drive.

#pragma once

#include <utility>

#include "paircav/hilbert.hpp"
#include "paircav/params.hpp"

namespace paircav {

// H/hbar = da a'a + db b'b + (dr - Ua a'a + Ub b'b) s_rr
//        + [(g a'b' + Omega) s_gr + eta e^{-i theta} a'b' s_gg + h.c.]
// Hermitian by construction on the truncated space.
Matrix build_hamiltonian(const EffectiveParams& p, const HilbertDims& dims);

// Dressed pair level n: energies E_{n,n,±} and their splittings from the bare
// pair energy 2 n delta_a, at eta = omega = 0:
//   E_{n,n,±} = 2 n da - (n-1) U0 / 2 ± sqrt((n-1)^2 U0^2 + 4 g^2 n^2) / 2
struct SpectrumLevel {
    int n{0};
    double e_plus{0.0};
    double e_minus{0.0};
    double split_plus{0.0};
    double split_minus{0.0};
};

SpectrumLevel energy_spectrum(const EffectiveParams& p, int n);

// Just the (plus, minus) splittings of level n.
std::pair<double, double> dressed_splittings(const EffectiveParams& p, int n);

// Drive phase and amplitude that cancel the two-photon amplitude:
//   theta_opt = -atan2(2 kappa + gamma, 4 da - U0)   in (-pi, pi], <= 0 for g*Omega > 0
//   eta_opt   = |g Omega| / sqrt((4 da - U0)^2 + (2 kappa + gamma)^2)
// kappa_a != kappa_b is handled by the (kappa_a + kappa_b)/2 heuristic.
struct InterferenceOptimum {
    double theta{0.0};
    double eta{0.0};
};

InterferenceOptimum interference_optimum(const EffectiveParams& p, const DissipationParams& d);

}  // namespace paircav
