// lindblad.hpp — Liouvillian assembly in the column-stacked superoperator
// representation, steady-state solve, and time propagation of density-like
// matrices for two-time correlators.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <optional>
#include <vector>

#include "paircav/hilbert.hpp"
#include "paircav/integrate.hpp"
#include "paircav/params.hpp"

namespace paircav {

using SparseMatrix = Eigen::SparseMatrix<complexd>;

// Jump operator with the rate symbol exactly as it appears in the master
// equation, i.e. the coefficient of D[o]/2 with D[o]rho = 2 o rho o' - {o'o, rho}.
// A single photon then loses intensity at exactly `rate`.
struct CollapseChannel {
    Matrix op;
    double rate{0.0};
};

// The model's channel set {(a, kappa_a), (b, kappa_b), (sigma_gr, gamma), (sigma_rr, gamma_d)}.
std::vector<CollapseChannel> standard_channels(const DissipationParams& d, const HilbertDims& dims);

// Column stacking: vec(A rho B) = (B^T ⊗ A) vec(rho).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index d);

// L = -i(I⊗H - H^T⊗I) + sum_c (rate/2) [2 conj(o)⊗o - I⊗(o'o) - (o'o)^T⊗I].
// H must be Hermitian (tolerance 1e-10 relative to its largest entry).
SparseMatrix build_liouvillian(const Matrix& h, const std::vector<CollapseChannel>& channels);
Matrix build_liouvillian_dense(const Matrix& h, const std::vector<CollapseChannel>& channels);

// max |L vec(rho)| — residual of a candidate steady state.
double liouvillian_residual(const SparseMatrix& liouvillian, const Matrix& rho);

struct SteadyStateOptions {
    double residual_tol{1e-12};
    double psd_tol{1e-8};      // eigenvalues of rho_s below -psd_tol mean the cutoff is too small
    double cond_limit{1e14};   // conditioning estimate that triggers the eigenvector fallback
    double zero_mode_tol{1e-8};
    double degeneracy_tol{1e-10};
};

// Unique rho_s with L vec(rho_s) = 0 and Tr rho_s = 1. Direct trace-replaced
// solve with iterative refinement; falls back to shift-inverted inverse
// iteration (which also classifies degenerate/missing zero modes).
Matrix steady_state(const SparseMatrix& liouvillian, const SteadyStateOptions& opts = {});

// rho(t) = unvec(exp(L t) vec(rho0)); input must be Hermitian.
Matrix evolve(const SparseMatrix& liouvillian, const Matrix& rho0, double t,
              const OdeOptions& opts = {});

// Same linear map without the Hermiticity check on the input (regression-theorem seeds).
Matrix propagate_matrix(const SparseMatrix& liouvillian, const Matrix& seed, double t,
                        const OdeOptions& opts = {});

// Truncation scan: steady photon number and g2_aa(0) deltas between successive
// cutoffs (relative, floored at 1e-12). Converged at the first cutoff whose
// step to the next — and every later step — is below tol.
struct ConvergenceStep {
    int n_max_from{0};
    int n_max_to{0};
    double ns_delta{0.0};
    double g2_delta{0.0};
};

struct ConvergenceReport {
    std::vector<ConvergenceStep> steps;
    bool converged{false};
    int converged_at{-1};
    double tol{1e-6};
};

ConvergenceReport convergence_check(const EffectiveParams& p, const DissipationParams& d,
                                    const std::vector<int>& cutoffs, double tol = 1e-6);

}  // namespace paircav
