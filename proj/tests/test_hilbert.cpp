#include <doctest.h>

#include <random>

#include "paircav/hilbert.hpp"

using namespace paircav;

namespace {

Matrix random_matrix(int n, std::mt19937& gen) {
    std::normal_distribution<double> dist;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = complexd(dist(gen), dist(gen));
    return m;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("annihilation operator matrix elements") {
    const Matrix a1 = annihilation_op(1);
    CHECK(a1(0, 1).real() == doctest::Approx(1.0));  // a|1> = |0>

    const Matrix a4 = annihilation_op(4);
    CHECK(std::abs(a4(2, 3) - complexd(1.7320508075688772, 0.0)) < 1e-15);  // sqrt(3)

    const Matrix n4 = Matrix(a4.adjoint() * a4);
    for (int n = 0; n <= 4; ++n) CHECK(n4(n, n).real() == doctest::Approx(n));
    CHECK((n4 - n4.diagonal().asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(annihilation_op(0), InvalidDimension);
}

TEST_CASE("truncated commutator [a, a dagger] pattern") {
    for (int n_max : {2, 3, 5, 9}) {
        const Matrix a = annihilation_op(n_max);
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        for (int n = 0; n < n_max; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));
        CHECK(comm(n_max, n_max).real() == doctest::Approx(-n_max));
        Matrix off = comm;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("atomic transition operators") {
    const Matrix s_gr = atomic_transition(AtomLevel::g, AtomLevel::r);
    const Matrix s_rg = atomic_transition(AtomLevel::r, AtomLevel::g);
    const Matrix s_gg = atomic_transition(AtomLevel::g, AtomLevel::g);
    const Matrix s_rr = atomic_transition(AtomLevel::r, AtomLevel::r);

    CHECK((s_gr * s_rg - s_gg).cwiseAbs().maxCoeff() == 0.0);  // projector identity
    CHECK(s_rr.trace().real() == doctest::Approx(1.0));
    CHECK((Matrix(s_gr.adjoint()) - s_rg).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(atomic_transition(static_cast<AtomLevel>(3), AtomLevel::g), InvalidLabel);
}

TEST_CASE("embedding dimensions and commutation") {
    const HilbertDims dims(2, 2);
    CHECK(dims.total() == 18);

    const Matrix a_full = embed(annihilation_op(2), Slot::A, dims);
    const Matrix b_full = embed(annihilation_op(2), Slot::B, dims);
    CHECK(a_full.rows() == 18);

    // distinct slots commute
    CHECK((a_full * b_full - b_full * a_full).cwiseAbs().maxCoeff() == 0.0);

    // identity embeds to identity
    const Matrix id = embed(Matrix::Identity(3, 3), Slot::B, dims);
    CHECK((id - Matrix::Identity(18, 18)).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(embed(Matrix::Identity(4, 4), Slot::A, dims), InvalidDimension);
}

TEST_CASE("embed preserves adjoints (random operators)") {
    const HilbertDims dims(3, 2);
    std::mt19937 gen(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const Slot slot = trial % 3 == 0 ? Slot::A : trial % 3 == 1 ? Slot::B : Slot::Atom;
        const int n = slot == Slot::A ? dims.dim_a() : slot == Slot::B ? dims.dim_b() : 2;
        const Matrix x = random_matrix(n, gen);
        const Matrix lhs = embed(Matrix(x.adjoint()), slot, dims);
        const Matrix rhs = embed(x, slot, dims).adjoint();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("canonical ordering and basis states") {
    const HilbertDims dims(3, 4);
    // index = s + 2*(n_b + (n_max_b + 1)*n_a), atom fastest
    CHECK(dims.index(0, 0, AtomLevel::g) == 0);
    CHECK(dims.index(0, 0, AtomLevel::r) == 1);
    CHECK(dims.index(0, 1, AtomLevel::g) == 2);
    CHECK(dims.index(1, 0, AtomLevel::g) == 10);
    CHECK(dims.index(2, 3, AtomLevel::r) == 2 * (3 + 5 * 2) + 1);

    const Matrix number_a = embed(number_op(dims.n_max_a), Slot::A, dims);

    const Vector vac = basis_state(0, 0, AtomLevel::g, dims);
    CHECK(std::abs(vac.dot(number_a * vac)) < 1e-15);

    const Vector two = basis_state(2, 2, AtomLevel::g, dims);
    CHECK((two.dot(number_a * two)).real() == doctest::Approx(2.0));

    CHECK(basis_state(1, 1, AtomLevel::r, dims).norm() == doctest::Approx(1.0));

    CHECK_THROWS_AS(basis_state(4, 0, AtomLevel::g, dims), IndexError);
    CHECK_THROWS_AS((HilbertDims{1, 3}), InvalidDimension);
}

}  // TEST_SUITE
