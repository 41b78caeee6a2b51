#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace cloneforge;
using cloneforge::testing::expect_error;

namespace {

StateVector random_state(std::mt19937& rng, std::size_t n) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    for (auto& x : a) x = {g(rng), g(rng)};
    return StateVector::normalized(std::move(a));
}

Unitary random_two_qubit(std::mt19937& rng) {
    // Gram-Schmidt on random columns.
    std::normal_distribution<double> g;
    std::vector<std::vector<Complex>> cols(4, std::vector<Complex>(4));
    for (auto& c : cols)
        for (auto& x : c) x = {g(rng), g(rng)};
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            Complex p = 0;
            for (std::size_t i = 0; i < 4; ++i) p += std::conj(cols[j][i]) * cols[k][i];
            for (std::size_t i = 0; i < 4; ++i) cols[k][i] -= p * cols[j][i];
        }
        double n = 0;
        for (auto& x : cols[k]) n += std::norm(x);
        for (auto& x : cols[k]) x /= std::sqrt(n);
    }
    Matrix m(4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = cols[c][r];
    return Unitary(m);
}

/// Full-register matrix for a gate on qubits (a, b), built by permuting basis
/// indices rather than by the library's strided update.
Matrix embed(const Unitary& u, std::size_t n, std::size_t a, std::size_t b) {
    const std::size_t dim = std::size_t{1} << n;
    auto bit = [&](std::size_t idx, std::size_t q) { return (idx >> (n - 1 - q)) & 1u; };
    Matrix out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            bool rest_equal = true;
            for (std::size_t q = 0; q < n; ++q)
                if (q != a && q != b && bit(r, q) != bit(c, q)) rest_equal = false;
            if (!rest_equal) continue;
            out(r, c) = u(2 * bit(r, a) + bit(r, b), 2 * bit(c, a) + bit(c, b));
        }
    }
    return out;
}

}  // namespace

TEST(Linalg, KronOfBasisStates) {
    const StateVector s = kron(StateVector::basis(1, 1), StateVector::basis(1, 0));
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[2], Complex(1.0));
    EXPECT_EQ(s.n_qubits(), 2u);
}

TEST(Linalg, KronMatrixBlocks) {
    const Matrix x{{0, 1}, {1, 0}};
    const Matrix k = kron(Matrix::identity(2), x);
    EXPECT_EQ(k(0, 1), Complex(1.0));
    EXPECT_EQ(k(2, 3), Complex(1.0));
    EXPECT_EQ(k(0, 2), Complex(0.0));
}

TEST(Linalg, ApplyGateMatchesEmbeddedMatrix) {
    std::mt19937 rng(7);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const Unitary u = random_two_qubit(rng);
                const StateVector s = random_state(rng, n);
                const Matrix full = embed(u, n, a, b);
                std::vector<Complex> expect(s.size());
                for (std::size_t r = 0; r < s.size(); ++r)
                    for (std::size_t c = 0; c < s.size(); ++c) expect[r] += full(r, c) * s[c];
                EXPECT_LT(max_abs_diff(apply_gate(s, u, {a, b}), StateVector(expect)), 1e-13)
                    << "n=" << n << " a=" << a << " b=" << b;
            }
        }
    }
}

TEST(Linalg, CnotFlipsTargetOnPlusControl) {
    // |+>|+> -> |+>|->, |->|+> unchanged.
    const StateVector pp = StateVector::basis(2, 0);
    EXPECT_EQ(apply_gate(pp, cnot(), {0, 1})[1], Complex(1.0));
    const StateVector mp = StateVector::basis(2, 2);
    EXPECT_EQ(apply_gate(mp, cnot(), {0, 1})[2], Complex(1.0));
}

TEST(Linalg, UnitaryRejectsNonUnitary) {
    expect_error(ErrorKind::non_unitary, [] { Unitary(Matrix{{1, 1}, {0, 1}}); });
    expect_error(ErrorKind::usage, [] { Unitary(Matrix::identity(3)); });
}

TEST(Linalg, StateVectorRequiresNormalization) {
    expect_error(ErrorKind::usage, [] { StateVector({1.0, 1.0}); });
    EXPECT_NO_THROW(StateVector({0.5, 0.0}, true));
    expect_error(ErrorKind::usage, [] { StateVector({1.0, 0.0, 0.0}); });
}

TEST(Linalg, ApplyGateValidatesQubits) {
    const StateVector s = StateVector::basis(2, 0);
    expect_error(ErrorKind::out_of_range, [&] { apply_gate(s, cnot(), {0, 2}); });
    expect_error(ErrorKind::usage, [&] { apply_gate(s, cnot(), {1, 1}); });
    expect_error(ErrorKind::usage, [&] { apply_gate(s, cnot(), {0}); });
}

TEST(Linalg, InnerProductAndFidelity) {
    const StateVector a = psi(kPi / 8, Sign::plus);
    const StateVector b = psi(kPi / 8, Sign::minus);
    EXPECT_NEAR(inner(a, b).real(), std::cos(kPi / 4), 1e-15);
    EXPECT_NEAR(global_fidelity(a, b), 0.5, 1e-15);
}

TEST(Linalg, ProjectionAndDiscard) {
    const StateVector s = kron(psi(kPi / 8, Sign::plus), plus_state());
    const Projection p = project_qubit(s, 0, Outcome::minus);
    EXPECT_NEAR(p.probability, std::pow(std::sin(kPi / 8), 2), 1e-15);
    EXPECT_NEAR(p.state.norm_squared(), 1.0, 1e-15);
    expect_error(ErrorKind::impossible_branch, [&] { project_qubit(s, 1, Outcome::minus); });
    const StateVector reduced = discard_qubit(s, 1);
    EXPECT_LT(max_abs_diff(reduced, psi(kPi / 8, Sign::plus)), 1e-15);
    expect_error(ErrorKind::usage, [&] { discard_qubit(s, 0); });
}
