#pragma once

// Two-qubit gates for state-dependent cloning networks and their reduction to
// CNOT plus single-qubit real rotations.
//
// CNOT convention: the target is flipped when the control is |+>, i.e. when
// the control bit is 0. This is not the textbook active-on-1 CNOT.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/bounds.hpp"
#include "cloneforge/linalg.hpp"
#include "cloneforge/states.hpp"

namespace cloneforge {

enum class GateKind { cnot, local, composite };

/// A gate bound to an ordered list of qubits.
struct GatePlacement {
    GatePlacement(Unitary g, std::vector<std::size_t> q, std::string l, GateKind k = GateKind::composite)
        : gate(std::move(g)), qubits(std::move(q)), label(std::move(l)), kind(k) {
        if (gate.dim() != (std::size_t{1} << qubits.size()))
            throw Error(ErrorKind::usage, "placement '" + label + "' has mismatched gate dimension");
    }

    Unitary gate;
    std::vector<std::size_t> qubits;
    std::string label;
    GateKind kind;
};

/// Applies the placements in order to every basis state of an n-qubit
/// register and returns the resulting 2^n x 2^n matrix.
inline Matrix circuit_matrix(const std::vector<GatePlacement>& placements, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    Matrix out(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector v = StateVector::basis(n_qubits, col);
        for (const auto& p : placements) v = apply_gate(v, p.gate, p.qubits);
        for (std::size_t row = 0; row < dim; ++row) out(row, col) = v[row];
    }
    return out;
}

/// Ordered placements restricted to CNOTs and single-qubit unitaries.
struct CircuitDecomposition {
    std::vector<GatePlacement> placements;

    std::size_t cnot_count() const {
        std::size_t n = 0;
        for (const auto& p : placements) n += p.kind == GateKind::cnot ? 1 : 0;
        return n;
    }

    Matrix product() const { return circuit_matrix(placements, 2); }
};

// Elementary gates.

inline Unitary identity_gate() { return Unitary::identity(2); }

inline Unitary pauli_x() { return Unitary(Matrix{{0, 1}, {1, 0}}); }

/// Control = first qubit, flips the target when the control is |+>.
inline Unitary cnot() {
    return Unitary(Matrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

/// Control = second qubit, target = first qubit.
inline Unitary cnot_reversed() {
    return Unitary(Matrix{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}});
}

/// Local factor (1/sqrt2)[(1 - J) cos(a/2) + (1 + J) sin(a/2)] with
/// J = i sigma_y = |-><+| - |+><-|. Equal to a rotation by a/2 - pi/4.
inline Unitary a_form(double angle) {
    const double c = std::cos(0.5 * angle) / std::sqrt(2.0);
    const double s = std::sin(0.5 * angle) / std::sqrt(2.0);
    return Unitary(Matrix{{c + s, c - s}, {s - c, c + s}});
}

// Distinguishability transfer.

struct DeltaAngles {
    double delta1;
    double delta2;
};

namespace detail {

struct UnitPair {
    double cos;
    double sin;
};

/// (x, y) / |(x, y)|, with the fallback used when the pair vanishes.
inline UnitPair unit_pair(double x, double y, UnitPair fallback) {
    const double r = std::hypot(x, y);
    if (r < 1e-300) return fallback;
    return {x / r, y / r};
}

struct TransferBlocks {
    UnitPair even;  // (N+ c1 c2, N+ s1 s2)
    UnitPair odd;   // (N- c1 s2, N- s1 c2)
};

inline TransferBlocks transfer_blocks(double theta1, double theta2) {
    theta1 = checked_theta(theta1, "theta1");
    theta2 = checked_theta(theta2, "theta2");
    const double c1 = std::cos(theta1), s1 = std::sin(theta1);
    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
    // The odd block is ill-defined only at theta1 = theta2 = 0; use its theta2 -> 0 limit.
    return {unit_pair(c1 * c2, s1 * s2, {1.0, 0.0}), unit_pair(c1 * s2, s1 * c2, {0.0, 1.0})};
}

}  // namespace detail

/// Angles with cos d1 = N+ c1 c2, sin d1 = N+ s1 s2, cos d2 = N- c1 s2, sin d2 = N- s1 c2.
inline DeltaAngles delta_angles(double theta1, double theta2) {
    const auto b = detail::transfer_blocks(theta1, theta2);
    const double e1 = std::abs(b.even.cos * b.even.cos + b.even.sin * b.even.sin - 1.0);
    const double e2 = std::abs(b.odd.cos * b.odd.cos + b.odd.sin * b.odd.sin - 1.0);
    if (e1 > 1e-12 || e2 > 1e-12) throw Error(ErrorKind::internal, "delta angle pair is not normalized");
    return {std::atan2(b.even.sin, b.even.cos), std::atan2(b.odd.sin, b.odd.cos)};
}

/// Angles (d1, d2 + pi/2) for which D = Q(d1) (1 x X) Q(d2 + pi/2) (1 x X).
/// The quarter-turn on d2 is what makes the product Hermitian and send the
/// odd-block input to |-+>.
inline DeltaAngles reflection_angles(double theta1, double theta2) {
    const auto d = delta_angles(theta1, theta2);
    return {d.delta1, d.delta2 + 0.5 * kPi};
}

/// Distinguishability transfer gate:
///   D |psi_+-(theta1)> |psi_+-(theta2)> = |psi_+-(theta3)> |+>,
/// with cos 2 theta3 = cos 2 theta1 cos 2 theta2. D is real, Hermitian and
/// self-inverse, block-diagonal on span{|++>,|-->} and span{|+->,|-+>}.
inline Unitary build_D(double theta1, double theta2) {
    const auto b = detail::transfer_blocks(theta1, theta2);
    Matrix d(4);
    // |++> <- N+(c1c2|++> + s1s2|-->),  |--> <- N+(s1s2|++> - c1c2|-->)
    d(0, 0) = b.even.cos;
    d(0, 3) = b.even.sin;
    d(3, 0) = b.even.sin;
    d(3, 3) = -b.even.cos;
    // |-+> <- N-(c1s2|+-> + s1c2|-+>),  |+-> <- N-(c1s2|-+> - s1c2|+->)
    d(2, 1) = b.odd.cos;
    d(2, 2) = b.odd.sin;
    d(1, 1) = -b.odd.sin;
    d(1, 2) = b.odd.cos;
    return Unitary(std::move(d));
}

/// Q(d)|++-> = +-cos d |+-+-> + sin d |-+-+>, identity on |+->, |-+>.
inline Unitary build_Q(double delta) {
    Matrix q = Matrix::identity(4);
    q(0, 0) = std::cos(delta);
    q(3, 0) = std::sin(delta);
    q(0, 3) = std::sin(delta);
    q(3, 3) = -std::cos(delta);
    return Unitary(std::move(q));
}

/// Controlled reflection: Lambda(d)|+,+-> = +-cos d |+,+-> + sin d |+,-+>,
/// identity when the control is |->.
inline Unitary build_Lambda(double delta) {
    Matrix l = Matrix::identity(4);
    l(0, 0) = std::cos(delta);
    l(1, 0) = std::sin(delta);
    l(0, 1) = std::sin(delta);
    l(1, 1) = -std::cos(delta);
    return Unitary(std::move(l));
}

/// E = (1 x X) C_ba (1 x X). Hermitian, and Q(d) = E Lambda(d) E.
inline Unitary build_E() {
    const Unitary ix = kron(identity_gate(), pauli_x());
    return ix * cnot_reversed() * ix;
}

/// Local factor of Lambda(d) = (1 x A) C_ab (1 x A^dagger).
inline Unitary build_A(double delta) { return a_form(delta); }

// State separation.

namespace detail {

struct SeparationParams {
    double probability;
    double cos_in;
    double cos_out;
};

inline SeparationParams separation_params(double theta_in, double theta_out) {
    theta_in = checked_theta(theta_in, "theta_in");
    theta_out = checked_theta(theta_out, "theta_out");
    if (theta_in == 0.0) throw Error(ErrorKind::identical_states, "theta_in = 0 cannot be separated");
    if (theta_in > theta_out) throw Error(ErrorKind::not_a_separation, "theta_in exceeds theta_out");
    const double p = separation_bound(single_overlap(theta_in), single_overlap(theta_out));
    return {p, std::cos(theta_in), std::cos(theta_out)};
}

}  // namespace detail

/// State separation gate on (ancilla, system):
///   S |+>|psi_+-(theta_in)> = sqrt(P)|+>|psi_+-(theta_out)> + sqrt(1-P)|->|+>,
/// with P the separation bound. Leaves |+-> and |--> invariant.
inline Unitary build_S(double theta_in, double theta_out) {
    const auto sp = detail::separation_params(theta_in, theta_out);
    const double keep = std::sqrt(sp.probability) * sp.cos_out / sp.cos_in;
    const double fail = std::sqrt(1.0 - sp.probability) / sp.cos_in;
    Matrix s = Matrix::identity(4);
    s(0, 0) = keep;
    s(2, 0) = fail;
    s(0, 2) = fail;
    s(2, 2) = -keep;
    return Unitary(std::move(s));
}

/// Angle gamma with cos gamma = sqrt(P) cos(theta_out)/cos(theta_in) and
/// sin gamma = sqrt(1-P)/cos(theta_in).
inline double separation_gamma(double theta_in, double theta_out) {
    const auto sp = detail::separation_params(theta_in, theta_out);
    const double c = std::sqrt(sp.probability) * sp.cos_out / sp.cos_in;
    const double s = std::sqrt(1.0 - sp.probability) / sp.cos_in;
    if (std::abs(c * c + s * s - 1.0) > 1e-12)
        throw Error(ErrorKind::internal, "separation angle pair is not normalized");
    return std::atan2(s, c);
}

/// Local factor of S = (B x 1) C_ba (B^dagger x 1).
inline Unitary build_B(double theta_in, double theta_out) { return a_form(separation_gamma(theta_in, theta_out)); }

// Single-qubit map onto the optimal clone subspace.

/// T |psi_+-(theta_in)> = mu_+- |psi_+(theta_out)> + nu_+- |psi_-(theta_out)>,
/// found by solving the 2x2 linear system and then checked for unitarity.
inline Unitary build_T(double theta_in, double theta_out, const CloneCoefficients& coeffs) {
    theta_in = detail::checked_theta(theta_in, "theta_in");
    theta_out = detail::checked_theta(theta_out, "theta_out");
    const double ci = std::cos(theta_in), si = std::sin(theta_in);
    const double co = std::cos(theta_out), so = std::sin(theta_out);

    // Targets in the |+>,|-> basis.
    const double tp0 = (coeffs.mu_plus + coeffs.nu_plus) * co, tp1 = (coeffs.mu_plus - coeffs.nu_plus) * so;
    const double tm0 = (coeffs.mu_minus + coeffs.nu_minus) * co, tm1 = (coeffs.mu_minus - coeffs.nu_minus) * so;

    const double in_overlap = ci * ci - si * si;
    const double out_overlap = tp0 * tm0 + tp1 * tm1;
    const double norm_p = tp0 * tp0 + tp1 * tp1;
    const double norm_m = tm0 * tm0 + tm1 * tm1;
    if (std::abs(in_overlap - out_overlap) > 1e-10 || std::abs(norm_p - 1.0) > 1e-10 ||
        std::abs(norm_m - 1.0) > 1e-10)
        throw Error(ErrorKind::non_unitary, "target pair does not preserve the input overlap and norms");

    // Inputs as columns: In = [[ci, ci], [si, -si]]; T = Out In^-1.
    const double det = -2.0 * ci * si;
    if (std::abs(det) < 1e-12) throw Error(ErrorKind::degenerate_subspace, "input pair is degenerate");
    const double inv00 = -si / det, inv01 = -ci / det;
    const double inv10 = -si / det, inv11 = ci / det;
    Matrix t(2);
    t(0, 0) = tp0 * inv00 + tm0 * inv10;
    t(0, 1) = tp0 * inv01 + tm0 * inv11;
    t(1, 0) = tp1 * inv00 + tm1 * inv10;
    t(1, 1) = tp1 * inv01 + tm1 * inv11;
    return Unitary(std::move(t), 1e-10);
}

// Decompositions into CNOT + single-qubit unitaries.

namespace detail {

inline GatePlacement cnot_on(std::size_t control, std::size_t target, std::string label) {
    return GatePlacement(cnot(), {control, target}, std::move(label), GateKind::cnot);
}

inline GatePlacement local_on(Unitary u, std::size_t qubit, std::string label) {
    return GatePlacement(std::move(u), {qubit}, std::move(label), GateKind::local);
}

}  // namespace detail

/// D(theta1, theta2) as
///   (1 x X) C_ba (1 x X A1) C_ab (X x A1^dag X A2) C_ab (1 x A2^dag X) C_ba
/// with A_i = A(d_i) on the reflection angles. Placements are listed in time
/// order (rightmost factor first); qubit 0 is a, qubit 1 is b.
inline CircuitDecomposition decompose_D(double theta1, double theta2) {
    const auto d = reflection_angles(theta1, theta2);
    const Unitary a1 = build_A(d.delta1);
    const Unitary a2 = build_A(d.delta2);
    const Unitary x = pauli_x();
    CircuitDecomposition out;
    auto& p = out.placements;
    p.push_back(detail::cnot_on(1, 0, "C_ba"));
    p.push_back(detail::local_on(a2.adjoint() * x, 1, "A2^dag X @ b"));
    p.push_back(detail::cnot_on(0, 1, "C_ab"));
    p.push_back(detail::local_on(x, 0, "X @ a"));
    p.push_back(detail::local_on(a1.adjoint() * x * a2, 1, "A1^dag X A2 @ b"));
    p.push_back(detail::cnot_on(0, 1, "C_ab"));
    p.push_back(detail::local_on(x * a1, 1, "X A1 @ b"));
    p.push_back(detail::cnot_on(1, 0, "C_ba"));
    p.push_back(detail::local_on(x, 1, "X @ b"));
    return out;
}

/// S(theta_in, theta_out) = (B x 1) C_ba (B^dag x 1), in time order.
inline CircuitDecomposition decompose_S(double theta_in, double theta_out) {
    const Unitary b = build_B(theta_in, theta_out);
    CircuitDecomposition out;
    out.placements.push_back(detail::local_on(b.adjoint(), 0, "B^dag @ a"));
    out.placements.push_back(detail::cnot_on(1, 0, "C_ba"));
    out.placements.push_back(detail::local_on(b, 0, "B @ a"));
    return out;
}

}  // namespace cloneforge
