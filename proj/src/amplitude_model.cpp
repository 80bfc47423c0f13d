#include "paircav/amplitude_model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "paircav/errors.hpp"
#include "paircav/model.hpp"

namespace paircav {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

struct Shorthand {
    complexd dta;    // 2*da - i*2*kappa
    complexd dtr;    // 2*da - i*gamma
    complexd e_m;    // eta * e^{-i theta}
    complexd e_p;    // eta * e^{+i theta}
};

Shorthand shorthand(const EffectiveParams& p, const DissipationParams& d) {
    Shorthand sh;
    sh.dta = complexd(2.0 * p.delta_a, -2.0 * d.kappa_mean());
    sh.dtr = complexd(2.0 * p.delta_a, -d.gamma);
    sh.e_m = p.eta * std::exp(complexd(0.0, -p.theta));
    sh.e_p = p.eta * std::exp(complexd(0.0, p.theta));
    return sh;
}

}  // namespace

AmplitudeState amplitude_rhs(const AmplitudeState& s, const EffectiveParams& p,
                             const DissipationParams& d) {
    const Shorthand sh = shorthand(p, d);
    const double u0 = p.u0();

    AmplitudeState dot;
    dot.c00g = -kI * (p.omega * s.c00r + sh.e_p * s.c11g);
    dot.c11g = -kI * (sh.dta * s.c11g + p.g * s.c00r + p.omega * s.c11r + sh.e_m * s.c00g +
                      2.0 * sh.e_p * s.c22g);
    dot.c00r = -kI * (sh.dtr * s.c00r + p.g * s.c11g + p.omega * s.c00g);
    dot.c22g = -kI * (2.0 * sh.dta * s.c22g + 2.0 * p.g * s.c11r + 2.0 * sh.e_m * s.c11g);
    dot.c11r = -kI * ((sh.dta + sh.dtr - u0) * s.c11r + 2.0 * p.g * s.c22g + p.omega * s.c11g);
    return dot;
}

AmplitudeState amplitude_steady(const EffectiveParams& p, const DissipationParams& d) {
    const Shorthand sh = shorthand(p, d);
    const double u0 = p.u0();

    // Unknowns x = (c11g, c00r, c22g, c11r) with c00g = 1 as the source.
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    m << sh.dta,        p.g,    2.0 * sh.e_p,  p.omega,
         p.g,           sh.dtr, 0.0,           0.0,
         2.0 * sh.e_m,  0.0,    2.0 * sh.dta,  2.0 * p.g,
         p.omega,       0.0,    2.0 * p.g,     sh.dta + sh.dtr - u0;
    rhs << -sh.e_m, -p.omega, 0.0, 0.0;

    Eigen::FullPivLU<Eigen::Matrix4cd> lu(m);
    if (!lu.isInvertible())
        throw ResonantDegeneracy("amplitude_steady: amplitude system is singular at this detuning");
    const Eigen::Vector4cd x = lu.solve(rhs);

    AmplitudeState s;
    s.c00g = 1.0;
    s.c11g = x(0);
    s.c00r = x(1);
    s.c22g = x(2);
    s.c11r = x(3);
    return s;
}

double verify_interference(const EffectiveParams& p, const DissipationParams& d) {
    const InterferenceOptimum opt = interference_optimum(p, d);
    EffectiveParams tuned = p;
    tuned.theta = opt.theta;
    tuned.eta = opt.eta;
    const AmplitudeState s = amplitude_steady(tuned, d);
    if (std::abs(s.c11g) == 0.0)
        throw ResonantDegeneracy("verify_interference: vanishing single-pair amplitude");
    return std::abs(s.c22g) / std::abs(s.c11g);
}

}  // namespace paircav
