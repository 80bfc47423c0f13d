#include "paircav/model.hpp"

#include <cmath>
#include <complex>

#include "paircav/errors.hpp"

namespace paircav {

Matrix build_hamiltonian(const EffectiveParams& p, const HilbertDims& dims) {
    const Matrix a = annihilation_op(dims.n_max_a);
    const Matrix b = annihilation_op(dims.n_max_b);

    const Matrix na = embed(Matrix(a.adjoint() * a), Slot::A, dims);
    const Matrix nb = embed(Matrix(b.adjoint() * b), Slot::B, dims);
    const Matrix adag_bdag =
        embed(Matrix(a.adjoint()), Slot::A, dims) * embed(Matrix(b.adjoint()), Slot::B, dims);
    const Matrix s_gr = embed(atomic_transition(AtomLevel::g, AtomLevel::r), Slot::Atom, dims);
    const Matrix s_gg = embed(atomic_transition(AtomLevel::g, AtomLevel::g), Slot::Atom, dims);
    const Matrix s_rr = embed(atomic_transition(AtomLevel::r, AtomLevel::r), Slot::Atom, dims);

    const complexd drive = p.eta * std::exp(complexd(0.0, -p.theta));

    Matrix h = p.delta_a * na + p.delta_b * nb;
    h += (p.delta_r * Matrix::Identity(dims.total(), dims.total()) - p.u_a * na + p.u_b * nb) * s_rr;
    Matrix coupling = (p.g * adag_bdag + p.omega * Matrix::Identity(dims.total(), dims.total())) * s_gr;
    coupling += drive * adag_bdag * s_gg;
    h += coupling + coupling.adjoint();
    return h;
}

SpectrumLevel energy_spectrum(const EffectiveParams& p, int n) {
    if (n < 1) throw IndexError("energy_spectrum: pair number n must be >= 1");
    const double u0 = p.u0();
    const double bare = 2.0 * n * p.delta_a;
    const double shift = 0.5 * (n - 1) * u0;
    // hypot keeps the n = 1 splitting exactly ±g for every g
    const double rabi = 0.5 * std::hypot((n - 1) * u0, 2.0 * n * p.g);

    SpectrumLevel level;
    level.n = n;
    level.split_plus = rabi - shift;
    level.split_minus = -rabi - shift;
    level.e_plus = bare + level.split_plus;
    level.e_minus = bare + level.split_minus;
    return level;
}

std::pair<double, double> dressed_splittings(const EffectiveParams& p, int n) {
    const SpectrumLevel level = energy_spectrum(p, n);
    return {level.split_plus, level.split_minus};
}

InterferenceOptimum interference_optimum(const EffectiveParams& p, const DissipationParams& d) {
    // With C_{2,2,g} forced to zero the amplitude equations give
    //   eta e^{-i theta} = g Omega / (4 da - U0 - i (2 kappa + gamma)),
    // so the optimum is the polar form of that complex number.
    const double kappa = d.kappa_mean();
    const complexd denom(4.0 * p.delta_a - p.u0(), -(2.0 * kappa + d.gamma));
    const complexd z = p.g * p.omega / denom;

    InterferenceOptimum opt;
    opt.eta = std::abs(z);
    opt.theta = opt.eta > 0.0 ? -std::arg(z) : -std::atan2(2.0 * kappa + d.gamma, 4.0 * p.delta_a - p.u0());
    return opt;
}

}  // namespace paircav
