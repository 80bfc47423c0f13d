// hilbert.hpp — truncated composite Hilbert space (mode A ⊗ mode B ⊗ atom {g,r})
// and the ladder / transition / embedding primitives everything else is built from.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <string>

#include "paircav/errors.hpp"

namespace paircav {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using complexd = std::complex<double>;

inline constexpr int kAtomDim = 2;  // |g>, |r>

enum class AtomLevel : int { g = 0, r = 1 };
enum class Slot { A, B, Atom };

// Fock cutoffs of the two cavity modes. Mode o keeps photon numbers 0..n_max_o,
// so its factor dimension is n_max_o + 1; the atom factor is fixed at 2.
struct HilbertDims {
    int n_max_a{5};
    int n_max_b{5};

    HilbertDims() = default;
    HilbertDims(int na, int nb) : n_max_a(na), n_max_b(nb) {
        if (na < 2 || nb < 2)
            throw InvalidDimension("HilbertDims: n_max must be >= 2 so the two-photon subspace exists");
    }

    int dim_a() const { return n_max_a + 1; }
    int dim_b() const { return n_max_b + 1; }
    int dim_atom() const { return kAtomDim; }
    int total() const { return dim_a() * dim_b() * kAtomDim; }

    // Canonical basis ordering |n_a, n_b, s>: atom index fastest, then n_b, then n_a.
    int index(int n_a, int n_b, AtomLevel s) const {
        const int si = static_cast<int>(s);
        if (n_a < 0 || n_a > n_max_a || n_b < 0 || n_b > n_max_b || si < 0 || si >= kAtomDim)
            throw IndexError("basis index (" + std::to_string(n_a) + "," + std::to_string(n_b) +
                             "," + std::to_string(si) + ") out of range");
        return si + kAtomDim * (n_b + dim_b() * n_a);
    }

    bool operator==(const HilbertDims&) const = default;
};

// Kronecker product as a plain free function over Eigen expressions.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return Eigen::kroneckerProduct(a.derived(), b.derived());
}

// Ladder operator on a single mode: <n-1| a |n> = sqrt(n), size (n_max+1)^2.
inline Matrix annihilation_op(int n_max) {
    if (n_max < 1) throw InvalidDimension("annihilation_op: n_max must be >= 1");
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix number_op(int n_max) {
    const Matrix a = annihilation_op(n_max);
    return a.adjoint() * a;
}

// Atomic transition sigma_kl = |k><l| on the {|g>,|r>} factor.
inline Matrix atomic_transition(AtomLevel k, AtomLevel l) {
    const int ki = static_cast<int>(k), li = static_cast<int>(l);
    if (ki < 0 || ki >= kAtomDim || li < 0 || li >= kAtomDim)
        throw InvalidLabel("atomic_transition: level label must be g or r");
    Matrix s = Matrix::Zero(kAtomDim, kAtomDim);
    s(ki, li) = 1.0;
    return s;
}

// Lift a single-factor operator to the full space, identity on the other factors.
inline Matrix embed(const Matrix& local, Slot slot, const HilbertDims& dims) {
    if (local.rows() != local.cols())
        throw InvalidDimension("embed: local operator must be square");
    const int expected = slot == Slot::A ? dims.dim_a()
                       : slot == Slot::B ? dims.dim_b()
                                         : dims.dim_atom();
    if (local.rows() != expected)
        throw InvalidDimension("embed: operator dimension " + std::to_string(local.rows()) +
                               " does not match slot dimension " + std::to_string(expected));
    const Matrix ia = Matrix::Identity(dims.dim_a(), dims.dim_a());
    const Matrix ib = Matrix::Identity(dims.dim_b(), dims.dim_b());
    const Matrix is = Matrix::Identity(kAtomDim, kAtomDim);
    switch (slot) {
        case Slot::A:    return kron(kron(local, ib), is);
        case Slot::B:    return kron(kron(ia, local), is);
        case Slot::Atom: return kron(kron(ia, ib), local);
    }
    throw InvalidLabel("embed: unknown slot");
}

// Basis ket |n_a, n_b, s> in the canonical ordering.
inline Vector basis_state(int n_a, int n_b, AtomLevel s, const HilbertDims& dims) {
    Vector v = Vector::Zero(dims.total());
    v(dims.index(n_a, n_b, s)) = 1.0;
    return v;
}

}  // namespace paircav
