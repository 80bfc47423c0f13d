#include "paircav/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paircav/errors.hpp"

namespace paircav {

namespace {

Matrix mode_op(Mode mode, const HilbertDims& dims) {
    return mode == Mode::A ? embed(annihilation_op(dims.n_max_a), Slot::A, dims)
                           : embed(annihilation_op(dims.n_max_b), Slot::B, dims);
}

double real_trace(const Matrix& m, const char* what) {
    const complexd tr = m.trace();
    if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real())))
        throw UndefinedCorrelation(std::string(what) + ": trace has imaginary part " +
                                   std::to_string(tr.imag()));
    return tr.real();
}

void check_density_shape(const Matrix& rho, const HilbertDims& dims, const char* what) {
    if (rho.rows() != dims.total() || rho.cols() != dims.total())
        throw InvalidDimension(std::string(what) + ": rho does not match dims");
}

}  // namespace

double photon_number(const Matrix& rho, Mode mode, const HilbertDims& dims) {
    check_density_shape(rho, dims, "photon_number");
    const Matrix op = mode_op(mode, dims);
    const double n = real_trace(op.adjoint() * op * rho, "photon_number");
    return std::max(n, 0.0);
}

double g2_equal_time(const Matrix& rho, Mode o, Mode o_prime, const HilbertDims& dims) {
    check_density_shape(rho, dims, "g2_equal_time");
    const double n_o = photon_number(rho, o, dims);
    const double n_op = photon_number(rho, o_prime, dims);
    if (n_o < 1e-12 || n_op < 1e-12)
        throw UndefinedCorrelation("g2_equal_time: occupation below 1e-12, correlation undefined");
    const Matrix a = mode_op(o, dims);
    const Matrix b = mode_op(o_prime, dims);
    const double numerator = real_trace(a.adjoint() * b.adjoint() * b * a * rho, "g2_equal_time");
    return std::max(numerator, 0.0) / (n_o * n_op);
}

std::vector<double> default_tau_grid(double tau_max, int points) {
    if (points < 2 || tau_max <= 0.0) throw ConfigError("default_tau_grid: need points >= 2, tau_max > 0");
    std::vector<double> grid;
    grid.reserve(points);
    grid.push_back(0.0);
    const double lo = std::log10(tau_max / 1000.0);
    const double hi = std::log10(tau_max);
    for (int i = 0; i < points - 1; ++i)
        grid.push_back(std::pow(10.0, lo + (hi - lo) * i / (points - 2)));
    return grid;
}

std::vector<CorrelationPoint> g2_tau(const SparseMatrix& liouvillian, const Matrix& rho_s, Mode o,
                                     Mode o_prime, std::span<const double> tau_grid,
                                     const HilbertDims& dims, const OdeOptions& opts) {
    check_density_shape(rho_s, dims, "g2_tau");
    if (liouvillian_residual(liouvillian, rho_s) > 1e-8)
        throw StaleState("g2_tau: rho_s is not the steady state of this Liouvillian");
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end()) ||
        (!tau_grid.empty() && tau_grid.front() < 0.0))
        throw ConfigError("g2_tau: tau grid must be sorted and nonnegative");

    const double n_o = photon_number(rho_s, o, dims);
    const double n_op = photon_number(rho_s, o_prime, dims);
    if (n_o < 1e-12 || n_op < 1e-12)
        throw UndefinedCorrelation("g2_tau: occupation below 1e-12, correlation undefined");

    const Matrix a = mode_op(o, dims);
    const Matrix b = mode_op(o_prime, dims);
    const Matrix readout = b.adjoint() * b;

    // regression seed o rho_s o', then chain the propagation along the grid
    Matrix seed = a * rho_s * a.adjoint();
    double t_prev = 0.0;
    std::vector<CorrelationPoint> out;
    out.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        seed = propagate_matrix(liouvillian, seed, tau - t_prev, opts);
        t_prev = tau;
        const double value = real_trace(readout * seed, "g2_tau");
        out.push_back({tau, std::max(value, 0.0) / (n_o * n_op)});
    }
    return out;
}

NonclassicalityReport cauchy_schwarz_gamma(const Matrix& rho, const HilbertDims& dims) {
    NonclassicalityReport report;
    report.g2_aa = g2_equal_time(rho, Mode::A, Mode::A, dims);
    report.g2_bb = g2_equal_time(rho, Mode::B, Mode::B, dims);
    report.g2_ab = g2_equal_time(rho, Mode::A, Mode::B, dims);
    const double denom = std::sqrt(report.g2_aa * report.g2_bb);
    report.gamma_defined = denom > 0.0;
    if (report.gamma_defined) {
        report.gamma_param = report.g2_ab / denom;
        report.violates = report.gamma_param > 1.0;
    }
    return report;
}

}  // namespace paircav
