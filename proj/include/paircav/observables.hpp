// observables.hpp — steady-state photon numbers, equal-time and delayed
// second-order correlations, and the Cauchy–Schwarz nonclassicality parameter.

#pragma once

#include <span>
#include <vector>

#include "paircav/hilbert.hpp"
#include "paircav/lindblad.hpp"

namespace paircav {

enum class Mode { A, B };

// n_s = Tr[o'o rho], clipped at 0 against roundoff.
double photon_number(const Matrix& rho, Mode mode, const HilbertDims& dims);

// g2_{oo'}(0) = Tr[o' o_p' o_p o rho] / (Tr[o'o rho] Tr[o_p'o_p rho]).
// Undefined (typed error) when either occupation is below 1e-12.
double g2_equal_time(const Matrix& rho, Mode o, Mode o_prime, const HilbertDims& dims);

struct CorrelationPoint {
    double tau{0.0};
    double value{0.0};
};

// {0} ∪ logspace(tau_max/1000, tau_max): resolves both the blockade dip and the
// slow gamma-limited recovery.
std::vector<double> default_tau_grid(double tau_max = 10.0, int points = 200);

// g2_{oo'}(tau) via the regression theorem: propagate o rho_s o' and read out
// the o' occupation. rho_s must actually be the steady state of L.
std::vector<CorrelationPoint> g2_tau(const SparseMatrix& liouvillian, const Matrix& rho_s, Mode o,
                                     Mode o_prime, std::span<const double> tau_grid,
                                     const HilbertDims& dims, const OdeOptions& opts = {});

struct NonclassicalityReport {
    double g2_aa{0.0};
    double g2_bb{0.0};
    double g2_ab{0.0};
    double gamma_param{0.0};  // meaningful only when gamma_defined
    bool gamma_defined{false};
    bool violates{false};     // gamma_param > 1 (classical bound broken)
};

// Gamma = g2_ab / sqrt(g2_aa g2_bb); flagged undefined when an auto-correlation vanishes.
NonclassicalityReport cauchy_schwarz_gamma(const Matrix& rho, const HilbertDims& dims);

}  // namespace paircav
