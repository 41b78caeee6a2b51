#pragma once

// Dense complex linear algebra for small qubit registers.
//
// Basis convention: |+> is bit value 0 and |-> is bit value 1. Qubit 0 is the
// most significant bit of an amplitude index, so for two qubits the amplitude
// order is |++>, |+->, |-+>, |-->.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/error.hpp"

namespace cloneforge {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kImpossibleBranch = 1e-14;

enum class Outcome { plus, minus };

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

inline void require_finite(const std::vector<Complex>& values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorKind::usage, std::string(what) + " contains a non-finite entry");
    }
}

}  // namespace detail

/// Square dense complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;

    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    Matrix(std::size_t dim, std::vector<Complex> row_major) : dim_(dim), data_(std::move(row_major)) {
        if (data_.size() != dim_ * dim_)
            throw Error(ErrorKind::usage, "matrix data size does not match dimension");
        detail::require_finite(data_, "matrix");
    }

    /// Real matrix from nested rows.
    Matrix(std::initializer_list<std::initializer_list<double>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            if (row.size() != dim_) throw Error(ErrorKind::usage, "matrix rows must be square");
            for (double x : row) data_.emplace_back(x, 0.0);
        }
        detail::require_finite(data_, "matrix");
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }

    Matrix adjoint() const {
        Matrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) throw Error(ErrorKind::usage, "matrix product dimension mismatch");
        Matrix out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r)
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const Complex ark = a(r, k);
                if (ark == Complex{}) continue;
                for (std::size_t c = 0; c < a.dim_; ++c) out(r, c) += ark * b(k, c);
            }
        return out;
    }

    /// Largest |imaginary part| over all entries.
    double max_imag() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::usage, "matrix comparison dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

/// || U^dagger U - I ||_max
inline double unitarity_defect(const Matrix& m) {
    return max_abs_diff(m.adjoint() * m, Matrix::identity(m.dim()));
}

/// A matrix whose unitarity was checked on construction.
class Unitary {
public:
    explicit Unitary(Matrix m, double tolerance = kUnitaryTolerance) : m_(std::move(m)) {
        if (!detail::is_power_of_two(m_.dim()) || m_.dim() < 2)
            throw Error(ErrorKind::usage, "gate dimension must be a power of two >= 2");
        const double defect = unitarity_defect(m_);
        if (!(defect < tolerance))
            throw Error(ErrorKind::non_unitary, "unitarity defect " + std::to_string(defect));
    }

    static Unitary identity(std::size_t dim) { return Unitary(Matrix::identity(dim)); }

    const Matrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    std::size_t n_qubits() const noexcept { return detail::log2_exact(m_.dim()); }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    Unitary adjoint() const { return Unitary(m_.adjoint()); }

    friend Unitary operator*(const Unitary& a, const Unitary& b) { return Unitary(a.m_ * b.m_); }

private:
    Matrix m_;
};

inline double max_abs_diff(const Unitary& a, const Unitary& b) { return max_abs_diff(a.matrix(), b.matrix()); }

/// Amplitudes over n qubits. Branch states produced by projection may carry a
/// squared norm below one; those are flagged subnormalized.
class StateVector {
public:
    explicit StateVector(std::vector<Complex> amps, bool subnormalized = false)
        : amps_(std::move(amps)), subnormalized_(subnormalized) {
        if (amps_.size() < 2 || !detail::is_power_of_two(amps_.size()))
            throw Error(ErrorKind::usage, "state length must be 2^n with n >= 1");
        detail::require_finite(amps_, "state");
        n_qubits_ = detail::log2_exact(amps_.size());
        if (!subnormalized_ && std::abs(norm_squared() - 1.0) > kNormTolerance)
            throw Error(ErrorKind::usage, "state is not normalized (norm^2 = " + std::to_string(norm_squared()) + ")");
    }

    /// Scales the amplitudes to unit norm.
    static StateVector normalized(std::vector<Complex> amps) {
        double n2 = 0.0;
        for (const auto& a : amps) n2 += std::norm(a);
        if (!(n2 > 0.0)) throw Error(ErrorKind::usage, "cannot normalize the zero vector");
        const double scale = 1.0 / std::sqrt(n2);
        for (auto& a : amps) a *= scale;
        return StateVector(std::move(amps));
    }

    static StateVector basis(std::size_t n_qubits, std::size_t index) {
        std::vector<Complex> amps(std::size_t{1} << n_qubits);
        if (index >= amps.size()) throw Error(ErrorKind::out_of_range, "basis index out of range");
        amps[index] = 1.0;
        return StateVector(std::move(amps));
    }

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    bool subnormalized() const noexcept { return subnormalized_; }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const {
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        return n2;
    }

private:
    std::vector<Complex> amps_;
    std::size_t n_qubits_ = 0;
    bool subnormalized_ = false;
};

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::usage, "state comparison size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Kronecker products. The left operand indexes the more significant bits.

inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.dim() * b.dim();
    Matrix out(n);
    for (std::size_t ar = 0; ar < a.dim(); ++ar)
        for (std::size_t ac = 0; ac < a.dim(); ++ac)
            for (std::size_t br = 0; br < b.dim(); ++br)
                for (std::size_t bc = 0; bc < b.dim(); ++bc)
                    out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
    return out;
}

inline Unitary kron(const Unitary& a, const Unitary& b) { return Unitary(kron(a.matrix(), b.matrix())); }

inline StateVector kron(const StateVector& a, const StateVector& b) {
    std::vector<Complex> amps(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) amps[i * b.size() + j] = a[i] * b[j];
    return StateVector(std::move(amps), a.subnormalized() || b.subnormalized());
}

/// Applies `gate` to the listed qubits; the first listed qubit is the most
/// significant bit of the gate's local basis.
inline StateVector apply_gate(const StateVector& state, const Unitary& gate, std::span<const std::size_t> qubits) {
    const std::size_t n = state.n_qubits();
    const std::size_t k = qubits.size();
    if (k == 0 || gate.dim() != (std::size_t{1} << k))
        throw Error(ErrorKind::usage, "gate dimension does not match the number of target qubits");
    std::size_t mask = 0;
    std::vector<std::size_t> bit(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (qubits[j] >= n) throw Error(ErrorKind::out_of_range, "qubit index " + std::to_string(qubits[j]) + " out of range");
        bit[j] = std::size_t{1} << (n - 1 - qubits[j]);
        if (mask & bit[j]) throw Error(ErrorKind::usage, "repeated qubit index");
        mask |= bit[j];
    }

    const std::size_t local = gate.dim();
    std::vector<std::size_t> offset(local, 0);
    for (std::size_t l = 0; l < local; ++l)
        for (std::size_t j = 0; j < k; ++j)
            if ((l >> (k - 1 - j)) & 1U) offset[l] |= bit[j];

    std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<Complex> in(local);
    for (std::size_t base = 0; base < state.size(); ++base) {
        if (base & mask) continue;
        for (std::size_t l = 0; l < local; ++l) in[l] = state[base | offset[l]];
        for (std::size_t r = 0; r < local; ++r) {
            Complex acc{};
            for (std::size_t c = 0; c < local; ++c) acc += gate(r, c) * in[c];
            out[base | offset[r]] = acc;
        }
    }
    return StateVector(std::move(out), state.subnormalized());
}

inline StateVector apply_gate(const StateVector& state, const Unitary& gate, std::initializer_list<std::size_t> qubits) {
    return apply_gate(state, gate, std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::usage, "inner product size mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double global_fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

namespace detail {

inline std::size_t qubit_bit(const StateVector& state, std::size_t qubit) {
    if (qubit >= state.n_qubits()) throw Error(ErrorKind::out_of_range, "qubit index " + std::to_string(qubit) + " out of range");
    return std::size_t{1} << (state.n_qubits() - 1 - qubit);
}

}  // namespace detail

/// Unnormalized branch of `state` with `qubit` projected onto `outcome`.
inline StateVector project_branch(const StateVector& state, std::size_t qubit, Outcome outcome) {
    const std::size_t bit = detail::qubit_bit(state, qubit);
    const bool want = outcome == Outcome::minus;
    std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (((i & bit) != 0) != want) amps[i] = 0.0;
    return StateVector(std::move(amps), true);
}

struct Projection {
    double probability;
    StateVector state;
};

/// Projective measurement of one qubit in the |+>,|-> basis, post-selected on
/// `outcome`. The post-measurement state is renormalized.
inline Projection project_qubit(const StateVector& state, std::size_t qubit, Outcome outcome) {
    StateVector branch = project_branch(state, qubit, outcome);
    const double p = branch.norm_squared();
    if (p < kImpossibleBranch) throw Error(ErrorKind::impossible_branch, "branch probability " + std::to_string(p));
    const double scale = 1.0 / std::sqrt(p);
    std::vector<Complex> amps(branch.amplitudes().begin(), branch.amplitudes().end());
    for (auto& a : amps) a *= scale;
    return {p, StateVector(std::move(amps))};
}

/// Removes a qubit that is in a definite |+> or |-> state, returning the
/// remaining n-1 qubit state. Throws if the qubit is entangled or mixed in.
inline StateVector discard_qubit(const StateVector& state, std::size_t qubit, double tolerance = kNormTolerance) {
    if (state.n_qubits() < 2) throw Error(ErrorKind::usage, "cannot discard the only qubit");
    const std::size_t bit = detail::qubit_bit(state, qubit);
    double weight[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < state.size(); ++i) weight[(i & bit) ? 1 : 0] += std::norm(state[i]);
    const std::size_t keep = weight[0] >= weight[1] ? 0 : bit;
    if (std::min(weight[0], weight[1]) > tolerance)
        throw Error(ErrorKind::usage, "qubit " + std::to_string(qubit) + " is not in a definite basis state");

    // Drop the bit at position `bit` from every retained index.
    const std::size_t low = bit - 1;
    std::vector<Complex> amps(state.size() / 2);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) != keep) continue;
        const std::size_t j = ((i >> 1) & ~low) | (i & low);
        amps[j] = state[i];
    }
    return StateVector(std::move(amps), state.subnormalized());
}

}  // namespace cloneforge
