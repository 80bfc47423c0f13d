#include "paircav/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <random>
#include <string>

#include "paircav/errors.hpp"

namespace paircav {

std::vector<CollapseChannel> standard_channels(const DissipationParams& d, const HilbertDims& dims) {
    std::vector<CollapseChannel> channels;
    channels.push_back({embed(annihilation_op(dims.n_max_a), Slot::A, dims), d.kappa_a});
    channels.push_back({embed(annihilation_op(dims.n_max_b), Slot::B, dims), d.kappa_b});
    channels.push_back({embed(atomic_transition(AtomLevel::g, AtomLevel::r), Slot::Atom, dims), d.gamma});
    channels.push_back({embed(atomic_transition(AtomLevel::r, AtomLevel::r), Slot::Atom, dims), d.gamma_d});
    return channels;
}

Vector vec(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Eigen::Index d) {
    if (v.size() != d * d) throw InvalidDimension("unvec: vector length is not d^2");
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

namespace {

using Triplets = std::vector<Eigen::Triplet<complexd>>;

struct Entry {
    int row, col;
    complexd value;
};

std::vector<Entry> nonzeros(const Matrix& m) {
    std::vector<Entry> out;
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0.0) out.push_back({r, c, m(r, c)});
    return out;
}

// scale * (A ⊗ B) accumulated into triplets; index (i1*d + i2, j1*d + j2).
void add_kron(Triplets& triplets, const Matrix& a, const Matrix& b, complexd scale) {
    const int d = static_cast<int>(b.rows());
    const auto an = nonzeros(a);
    const auto bn = nonzeros(b);
    for (const Entry& ea : an)
        for (const Entry& eb : bn)
            triplets.emplace_back(ea.row * d + eb.row, ea.col * d + eb.col, scale * ea.value * eb.value);
}

void check_liouvillian_inputs(const Matrix& h, const std::vector<CollapseChannel>& channels) {
    if (h.rows() != h.cols()) throw InvalidDimension("build_liouvillian: H must be square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InvalidDimension("build_liouvillian: H is not Hermitian");
    for (const CollapseChannel& c : channels) {
        if (c.op.rows() != h.rows() || c.op.cols() != h.cols())
            throw InvalidDimension("build_liouvillian: channel dimension mismatch");
        if (c.rate < 0.0) throw InvalidDimension("build_liouvillian: negative rate");
    }
}

Triplets liouvillian_triplets(const Matrix& h, const std::vector<CollapseChannel>& channels) {
    const Eigen::Index d = h.rows();
    const Matrix identity = Matrix::Identity(d, d);
    const complexd img(0.0, 1.0);

    Triplets triplets;
    add_kron(triplets, identity, h, -img);                 // -i H rho
    add_kron(triplets, h.transpose(), identity, img);      // +i rho H
    for (const CollapseChannel& c : channels) {
        if (c.rate == 0.0) continue;
        const Matrix odo = c.op.adjoint() * c.op;
        add_kron(triplets, c.op.conjugate(), c.op, c.rate);                  // (rate/2) * 2 o rho o'
        add_kron(triplets, identity, odo, -0.5 * c.rate);                    // -(rate/2) o'o rho
        add_kron(triplets, odo.transpose(), identity, -0.5 * c.rate);        // -(rate/2) rho o'o
    }
    return triplets;
}

}  // namespace

SparseMatrix build_liouvillian(const Matrix& h, const std::vector<CollapseChannel>& channels) {
    check_liouvillian_inputs(h, channels);
    const Eigen::Index d = h.rows();
    const Triplets triplets = liouvillian_triplets(h, channels);
    SparseMatrix liouvillian(d * d, d * d);
    liouvillian.setFromTriplets(triplets.begin(), triplets.end());
    liouvillian.makeCompressed();
    return liouvillian;
}

Matrix build_liouvillian_dense(const Matrix& h, const std::vector<CollapseChannel>& channels) {
    check_liouvillian_inputs(h, channels);
    const Eigen::Index d = h.rows();
    Matrix liouvillian = Matrix::Zero(d * d, d * d);
    for (const auto& t : liouvillian_triplets(h, channels)) liouvillian(t.row(), t.col()) += t.value();
    return liouvillian;
}

double liouvillian_residual(const SparseMatrix& liouvillian, const Matrix& rho) {
    const Vector r = liouvillian * vec(rho);
    return r.cwiseAbs().maxCoeff();
}

namespace {

Eigen::Index density_dim(const SparseMatrix& liouvillian) {
    const Eigen::Index d2 = liouvillian.rows();
    if (liouvillian.cols() != d2) throw InvalidDimension("Liouvillian must be square");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d2))));
    if (d * d != d2) throw InvalidDimension("Liouvillian size is not a perfect square");
    return d;
}

Vector random_unit_vector(Eigen::Index n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complexd(dist(gen), dist(gen));
    v /= v.norm();
    return v;
}

// Hermitize, normalize trace, and clip roundoff-negative eigenvalues. Raises
// truncation-too-small when rho is negative beyond psd_tol.
Matrix finalize_density(Matrix rho, double psd_tol) {
    rho = 0.5 * (rho + rho.adjoint().eval());
    const complexd tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw NonUniqueSteadyState("steady_state: zero mode is traceless; no normalizable steady state");
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -psd_tol)
        throw TruncationTooSmall("steady_state: rho_s eigenvalue " + std::to_string(min_eig) +
                                 " below -" + std::to_string(psd_tol) +
                                 "; increase the Fock cutoff n_max");
    if (min_eig < 0.0) {
        const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
        rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
        rho /= rho.trace();
    }
    return rho;
}

// Shift-inverted inverse iteration: the two smallest-|lambda| modes of L.
// Classifies missing/degenerate zero modes, otherwise returns the steady state.
Matrix steady_state_eigen_fallback(const SparseMatrix& liouvillian, const SteadyStateOptions& opts) {
    const Eigen::Index d = density_dim(liouvillian);
    const Eigen::Index d2 = liouvillian.rows();

    double scale = 0.0;
    for (int k = 0; k < liouvillian.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(liouvillian, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    const double sigma = 1e-8 * std::max(1.0, scale);

    SparseMatrix shifted = liouvillian;
    for (Eigen::Index i = 0; i < d2; ++i) shifted.coeffRef(i, i) -= sigma;
    shifted.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu(shifted);
    if (lu.info() != Eigen::Success)
        throw NonUniqueSteadyState("steady_state: shifted Liouvillian is singular");

    auto smallest_mode = [&](const Vector& deflate_against) {
        Vector v = random_unit_vector(d2, deflate_against.size() == 0 ? 7u : 11u);
        complexd lambda(0.0, 0.0);
        for (int iter = 0; iter < 50; ++iter) {
            if (deflate_against.size() > 0) v -= deflate_against * deflate_against.dot(v);
            v = lu.solve(v);
            if (deflate_against.size() > 0) v -= deflate_against * deflate_against.dot(v);
            v /= v.norm();
            lambda = v.dot(liouvillian * v);
            if ((liouvillian * v - lambda * v).norm() < 1e-12 * std::max(1.0, scale)) break;
        }
        return std::make_pair(lambda, v);
    };

    const auto [lambda1, v1] = smallest_mode(Vector{});
    if (std::abs(lambda1) > opts.zero_mode_tol)
        throw NonUniqueSteadyState("steady_state: no zero mode found (smallest |lambda| = " +
                                   std::to_string(std::abs(lambda1)) + ")");
    const auto [lambda2, v2] = smallest_mode(v1);
    if (std::abs(lambda2) < opts.degeneracy_tol)
        throw NonUniqueSteadyState("steady_state: zero mode is degenerate (second |lambda| = " +
                                   std::to_string(std::abs(lambda2)) + ")");

    return finalize_density(unvec(v1, d), opts.psd_tol);
}

}  // namespace

Matrix steady_state(const SparseMatrix& liouvillian, const SteadyStateOptions& opts) {
    const Eigen::Index d = density_dim(liouvillian);
    const Eigen::Index d2 = liouvillian.rows();

    // Trace-replaced system: row 0 (a diagonal row, dependent on the others
    // through trace preservation) becomes sum_j rho_jj = 1.
    Triplets triplets;
    triplets.reserve(static_cast<std::size_t>(liouvillian.nonZeros()) + static_cast<std::size_t>(d));
    for (int k = 0; k < liouvillian.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(liouvillian, k); it; ++it)
            if (it.row() != 0) triplets.emplace_back(static_cast<int>(it.row()),
                                                     static_cast<int>(it.col()), it.value());
    for (Eigen::Index j = 0; j < d; ++j)
        triplets.emplace_back(0, static_cast<int>(j * d + j), complexd(1.0, 0.0));
    SparseMatrix constrained(d2, d2);
    constrained.setFromTriplets(triplets.begin(), triplets.end());
    constrained.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu(constrained);
    if (lu.info() != Eigen::Success) return steady_state_eigen_fallback(liouvillian, opts);

    // cheap conditioning probe: ||A^{-1} b|| for a random unit b lower-bounds cond(A)/||A||
    const Vector probe = lu.solve(random_unit_vector(d2, 12345u));
    if (!probe.allFinite() || probe.norm() > opts.cond_limit)
        return steady_state_eigen_fallback(liouvillian, opts);

    Vector b = Vector::Zero(d2);
    b(0) = 1.0;
    Vector x = lu.solve(b);

    for (int refine = 0; refine < 3; ++refine) {
        const Vector residual = b - constrained * x;
        if (residual.cwiseAbs().maxCoeff() < 0.1 * opts.residual_tol) break;
        x += lu.solve(residual);
    }

    Matrix rho = finalize_density(unvec(x, d), opts.psd_tol);
    if (liouvillian_residual(liouvillian, rho) > opts.residual_tol)
        return steady_state_eigen_fallback(liouvillian, opts);
    return rho;
}

namespace {

Matrix propagate_impl(const SparseMatrix& liouvillian, const Matrix& m, double t,
                      const OdeOptions& opts) {
    const Eigen::Index d = density_dim(liouvillian);
    if (m.rows() != d || m.cols() != d)
        throw InvalidDimension("propagate: matrix dimension does not match the Liouvillian");
    if (t < 0.0) throw IntegrationError("propagate: t must be >= 0");
    if (t == 0.0) return m;
    const Vector out = integrate_ode(
        [&liouvillian](const Vector& y, Vector& dy) { dy.noalias() = liouvillian * y; }, vec(m),
        0.0, t, opts);
    return unvec(out, d);
}

}  // namespace

Matrix evolve(const SparseMatrix& liouvillian, const Matrix& rho0, double t, const OdeOptions& opts) {
    const double scale = std::max(1.0, rho0.cwiseAbs().maxCoeff());
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw InvalidDimension("evolve: rho0 must be Hermitian (use propagate_matrix for seeds)");
    return propagate_impl(liouvillian, rho0, t, opts);
}

Matrix propagate_matrix(const SparseMatrix& liouvillian, const Matrix& seed, double t,
                        const OdeOptions& opts) {
    return propagate_impl(liouvillian, seed, t, opts);
}

}  // namespace paircav
