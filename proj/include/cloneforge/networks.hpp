#pragma once

// Exact, optimal-approximate and hybrid cloning networks built from
// distinguishability transfer (D), state separation (S) and a single-qubit
// unitary (T), and their exact (non-sampled) simulation.
//
// Register layout: system qubits 0..N-1, with the M input copies on 0..M-1 and
// the |+> neutral state on M..N-1. A separation stage adds one ancilla at
// index N, prepared in |+>; success is the |+> outcome.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cloneforge/bounds.hpp"
#include "cloneforge/gates.hpp"
#include "cloneforge/linalg.hpp"
#include "cloneforge/states.hpp"

namespace cloneforge {

enum class Mode { exact, approx, hybrid };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::exact: return "exact";
        case Mode::approx: return "approx";
        case Mode::hybrid: return "hybrid";
    }
    return "unknown";
}

/// Whether D and S are placed as single two-qubit gates or as their
/// CNOT + single-qubit decompositions.
enum class Realization { direct, decomposed };

/// Largest register (clones plus ancilla) the dense simulator accepts.
inline constexpr int kMaxSimulatedQubits = 20;

/// Ancilla measurement taken after the first `after_step` placements.
struct Measurement {
    std::size_t ancilla;
    std::size_t after_step;
};

struct NetworkSpec {
    std::size_t n_qubits = 0;
    std::vector<GatePlacement> placements;
    std::optional<Measurement> measurement;

    void validate() const {
        if (n_qubits == 0) throw Error(ErrorKind::usage, "network has no qubits");
        for (const auto& p : placements)
            for (auto q : p.qubits)
                if (q >= n_qubits)
                    throw Error(ErrorKind::out_of_range, "placement '" + p.label + "' references qubit " + std::to_string(q));
        if (measurement) {
            if (measurement->ancilla >= n_qubits) throw Error(ErrorKind::out_of_range, "measured qubit out of range");
            if (measurement->after_step > placements.size())
                throw Error(ErrorKind::out_of_range, "measurement step beyond the placement list");
        }
    }

    std::size_t system_qubits() const { return measurement ? n_qubits - 1 : n_qubits; }
};

struct SimulationResult {
    Sign input_sign = Sign::plus;
    double success_probability = 1.0;
    /// Post-selected system state, ancilla removed, normalized.
    StateVector post_state{std::vector<Complex>{1.0, 0.0}};
    double global_fidelity_vs_exact = 0.0;
    /// System state on the failed branch, when a measurement exists and that branch is possible.
    std::optional<StateVector> failure_state;
};

/// |psi^M_+-> |+>^(N-M), optionally followed by a |+> ancilla.
inline StateVector prepare_input(const CloningProblem& problem, Sign sign, bool with_ancilla) {
    StateVector state = tensor_power(psi(problem.theta(), sign), static_cast<std::size_t>(problem.m()));
    const int neutral = problem.n() - problem.m() + (with_ancilla ? 1 : 0);
    for (int i = 0; i < neutral; ++i) state = kron(state, plus_state());
    return state;
}

/// |psi^N_+->, the ideal N-fold clone.
inline StateVector exact_clones(const CloningProblem& problem, Sign sign) {
    return tensor_power(psi(problem.theta(), sign), static_cast<std::size_t>(problem.n()));
}

namespace detail {

inline std::string angle_label(double theta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", theta);
    return buf;
}

inline void append_D(std::vector<GatePlacement>& out, double theta1, double theta2, std::size_t q0, std::size_t q1,
                     Realization realization) {
    const std::string tag = "D(" + angle_label(theta1) + "," + angle_label(theta2) + ")@(" + std::to_string(q0) + "," +
                            std::to_string(q1) + ")";
    if (realization == Realization::direct) {
        out.emplace_back(build_D(theta1, theta2), std::vector<std::size_t>{q0, q1}, tag);
        return;
    }
    const std::size_t map[2] = {q0, q1};
    for (auto& p : decompose_D(theta1, theta2).placements) {
        std::vector<std::size_t> qs;
        for (auto q : p.qubits) qs.push_back(map[q]);
        out.emplace_back(p.gate, std::move(qs), tag + " " + p.label, p.kind);
    }
}

inline void append_S(std::vector<GatePlacement>& out, double theta_in, double theta_out, std::size_t ancilla,
                     std::size_t system, Realization realization) {
    const std::string tag = "S(" + angle_label(theta_in) + "," + angle_label(theta_out) + ")@(" +
                            std::to_string(ancilla) + "," + std::to_string(system) + ")";
    if (realization == Realization::direct) {
        out.emplace_back(build_S(theta_in, theta_out), std::vector<std::size_t>{ancilla, system}, tag);
        return;
    }
    const std::size_t map[2] = {ancilla, system};
    for (auto& p : decompose_S(theta_in, theta_out).placements) {
        std::vector<std::size_t> qs;
        for (auto q : p.qubits) qs.push_back(map[q]);
        out.emplace_back(p.gate, std::move(qs), tag + " " + p.label, p.kind);
    }
}

inline void append_compression(std::vector<GatePlacement>& out, const CloningProblem& problem, Realization r) {
    // D_{M-1}(t1, t1) acts first; D_j(t1, t_{M-j}) merges qubit j into qubit j-1.
    const double t1 = problem.theta();
    for (int j = problem.m() - 1; j >= 1; --j)
        append_D(out, t1, angle_for_copies(t1, problem.m() - j), static_cast<std::size_t>(j - 1),
                 static_cast<std::size_t>(j), r);
}

inline void append_decompression(std::vector<GatePlacement>& out, const CloningProblem& problem, Realization r) {
    // D_1(t1, t_{N-1}) acts first, then D_2(t1, t_{N-2}), ..., D_{N-1}(t1, t1).
    const double t1 = problem.theta();
    for (int j = 1; j <= problem.n() - 1; ++j)
        append_D(out, t1, angle_for_copies(t1, problem.n() - j), static_cast<std::size_t>(j - 1),
                 static_cast<std::size_t>(j), r);
}

inline GatePlacement t_placement(Unitary t, std::string label) {
    return GatePlacement(std::move(t), {0}, std::move(label), GateKind::local);
}

inline NetworkSpec separated_network(const CloningProblem& problem, double theta_sep,
                                     const std::optional<Unitary>& t_gate, Realization r) {
    const double theta_m = angle_for_copies(problem.theta(), problem.m());
    const auto ancilla = static_cast<std::size_t>(problem.n());
    NetworkSpec spec;
    spec.n_qubits = ancilla + 1;
    append_compression(spec.placements, problem, r);
    append_S(spec.placements, theta_m, theta_sep, ancilla, 0, r);
    spec.measurement = Measurement{ancilla, spec.placements.size()};
    if (t_gate) spec.placements.push_back(t_placement(*t_gate, "T@0"));
    append_decompression(spec.placements, problem, r);
    return spec;
}

}  // namespace detail

/// Moves all distinguishability of the M input copies onto qubit 0.
inline NetworkSpec compression_sequence(const CloningProblem& problem, Realization r = Realization::direct) {
    NetworkSpec spec;
    spec.n_qubits = static_cast<std::size_t>(problem.n());
    detail::append_compression(spec.placements, problem, r);
    return spec;
}

/// Spreads |psi_+-(theta_N)> on qubit 0 over N qubits as |psi^N_+->.
inline NetworkSpec decompression_sequence(const CloningProblem& problem, Realization r = Realization::direct) {
    NetworkSpec spec;
    spec.n_qubits = static_cast<std::size_t>(problem.n());
    detail::append_decompression(spec.placements, problem, r);
    return spec;
}

/// Compression, separation to theta_N, ancilla post-selection, decompression.
inline NetworkSpec exact_network(const CloningProblem& problem, Realization r = Realization::direct) {
    if (problem.theta() == 0.0) throw Error(ErrorKind::identical_states, "theta = 0");
    return detail::separated_network(problem, angle_for_copies(problem.theta(), problem.n()), std::nullopt, r);
}

/// Single-qubit unitary that maps |psi_+-(theta_in)> onto the optimal clone
/// pair for output angle theta_N and the given output-state angles.
inline Unitary clone_rotation(double theta_in, double theta_n, const OptimalAngles& angles) {
    return build_T(theta_in, theta_n, clone_coefficients(angles, theta_n));
}

/// Deterministic network reaching the optimal global fidelity.
inline NetworkSpec approx_network(const CloningProblem& problem, Realization r = Realization::direct) {
    const double theta_m = angle_for_copies(problem.theta(), problem.m());
    const double theta_n = angle_for_copies(problem.theta(), problem.n());
    const Unitary t = clone_rotation(theta_m, theta_n, optimal_phis(problem));
    NetworkSpec spec;
    spec.n_qubits = static_cast<std::size_t>(problem.n());
    detail::append_compression(spec.placements, problem, r);
    spec.placements.push_back(detail::t_placement(t, "T@0"));
    detail::append_decompression(spec.placements, problem, r);
    return spec;
}

/// Partial separation with success probability p_s, then the optimal map
/// for the separated pair. Equal priors only.
inline NetworkSpec hybrid_network(const CloningProblem& problem, double p_s, Realization r = Realization::direct) {
    if (std::abs(problem.eta_plus() - 0.5) > 1e-12)
        throw Error(ErrorKind::usage, "hybrid cloning is defined for equal priors only");
    if (problem.theta() == 0.0) throw Error(ErrorKind::identical_states, "theta = 0");
    const double theta_m = angle_for_copies(problem.theta(), problem.m());
    const double theta_n = angle_for_copies(problem.theta(), problem.n());
    const double theta_sep = separated_angle(theta_m, theta_n, p_s);
    const Unitary t = clone_rotation(theta_sep, theta_n, {theta_sep, -theta_sep});
    return detail::separated_network(problem, theta_sep, t, r);
}

/// Applies the placements in order, post-selects the ancilla on |+> at the
/// measurement step, discards it, and scores the system state against
/// `reference`.
inline SimulationResult run_network(const NetworkSpec& spec, const StateVector& input, const StateVector& reference,
                                    Sign sign = Sign::plus) {
    spec.validate();
    if (input.n_qubits() != spec.n_qubits) throw Error(ErrorKind::usage, "input size does not match the network");
    if (reference.n_qubits() != spec.system_qubits())
        throw Error(ErrorKind::usage, "reference size does not match the system register");

    SimulationResult result;
    result.input_sign = sign;
    StateVector state = input;
    std::optional<StateVector> failed;
    for (std::size_t i = 0; i <= spec.placements.size(); ++i) {
        if (spec.measurement && spec.measurement->after_step == i) {
            const std::size_t a = spec.measurement->ancilla;
            StateVector fail_branch = project_branch(state, a, Outcome::minus);
            if (fail_branch.norm_squared() >= kImpossibleBranch) failed = project_qubit(state, a, Outcome::minus).state;
            auto success = project_qubit(state, a, Outcome::plus);
            result.success_probability = success.probability;
            state = std::move(success.state);
        }
        if (i < spec.placements.size()) {
            const auto& p = spec.placements[i];
            if (failed) failed = apply_gate(*failed, p.gate, p.qubits);
            state = apply_gate(state, p.gate, p.qubits);
        }
    }

    if (spec.measurement) {
        state = discard_qubit(state, spec.measurement->ancilla);
        if (failed) result.failure_state = discard_qubit(*failed, spec.measurement->ancilla);
    }
    result.global_fidelity_vs_exact = global_fidelity(reference, state);
    result.post_state = std::move(state);
    return result;
}

/// Runs `spec` on the prepared input for `sign` and scores it against |psi^N_sign>.
inline SimulationResult simulate(const CloningProblem& problem, const NetworkSpec& spec, Sign sign) {
    return run_network(spec, prepare_input(problem, sign, spec.measurement.has_value()), exact_clones(problem, sign),
                       sign);
}

struct CloningReport {
    Mode mode = Mode::exact;
    double p_s = 1.0;
    SimulationResult plus;
    SimulationResult minus;
    /// Prior-weighted success probability.
    double success_probability = 0.0;
    /// Prior-weighted global fidelity of the post-selected ensemble.
    double fidelity = 0.0;
    double bound_success_probability = 0.0;
    double bound_fidelity = 0.0;
    double success_deviation = 0.0;
    double fidelity_deviation = 0.0;
};

/// Simulates both inputs of `problem` through the network for `mode` and
/// compares the aggregate against the analytic bounds.
inline CloningReport evaluate_cloner(const CloningProblem& problem, Mode mode, std::optional<double> p_s = std::nullopt,
                                     Realization r = Realization::direct) {
    if (problem.n() + 1 > kMaxSimulatedQubits)
        throw Error(ErrorKind::out_of_range, "simulation limited to N <= " + std::to_string(kMaxSimulatedQubits - 1) +
                                                 " output copies");
    CloningReport report;
    report.mode = mode;
    NetworkSpec spec;
    switch (mode) {
        case Mode::exact:
            spec = exact_network(problem, r);
            report.bound_success_probability = exact_clone_probability(problem.theta(), problem.m(), problem.n());
            report.bound_fidelity = 1.0;
            report.p_s = report.bound_success_probability;
            break;
        case Mode::approx:
            spec = approx_network(problem, r);
            report.bound_success_probability = 1.0;
            report.bound_fidelity = fidelity_bound(problem);
            break;
        case Mode::hybrid: {
            if (!p_s) throw Error(ErrorKind::usage, "hybrid mode needs a success probability p_s");
            spec = hybrid_network(problem, *p_s, r);
            const auto point = hybrid_fidelity_bound(problem.theta(), problem.m(), problem.n(), *p_s);
            report.p_s = point.p_success;
            report.bound_success_probability = point.p_success;
            report.bound_fidelity = point.fidelity_bound;
            break;
        }
    }

    report.plus = simulate(problem, spec, Sign::plus);
    report.minus = simulate(problem, spec, Sign::minus);
    const double wp = problem.eta_plus() * report.plus.success_probability;
    const double wm = problem.eta_minus() * report.minus.success_probability;
    report.success_probability = wp + wm;
    report.fidelity = (wp * report.plus.global_fidelity_vs_exact + wm * report.minus.global_fidelity_vs_exact) /
                      report.success_probability;
    report.success_deviation = std::abs(report.success_probability - report.bound_success_probability);
    report.fidelity_deviation = std::abs(report.fidelity - report.bound_fidelity);
    return report;
}

}  // namespace cloneforge
