#pragma once

// Self-check suites over fixed parameter grids. Each check compares a
// deviation against a tolerance; `tolerance_scale` multiplies every
// tolerance and exists so the failure path can be exercised.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cloneforge/bounds.hpp"
#include "cloneforge/gates.hpp"
#include "cloneforge/networks.hpp"

namespace cloneforge {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int total = 0;
    std::vector<std::string> failures;

    bool ok() const { return passed == total; }
};

struct VerifyOptions {
    double tolerance_scale = 1.0;
};

namespace detail {

class SuiteRecorder {
public:
    SuiteRecorder(std::string name, double scale) : scale_(scale) { result_.name = std::move(name); }

    void check(const std::string& what, double deviation, double tolerance) {
        ++result_.total;
        if (std::isfinite(deviation) && deviation <= tolerance * scale_) {
            ++result_.passed;
        } else if (result_.failures.size() < 8) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " (deviation %.3g, tolerance %.3g)", deviation, tolerance * scale_);
            result_.failures.push_back(what + buf);
        }
    }

    void check_true(const std::string& what, bool condition) { check(what, condition ? 0.0 : 1.0, 0.5); }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
    double scale_;
};

inline const std::vector<double>& grid_thetas() {
    static const std::vector<double> t = {kPi / 16, kPi / 8, 3 * kPi / 16, kPi / 4};
    return t;
}

inline std::vector<std::pair<int, int>> grid_copies(int max_n = 6) {
    std::vector<std::pair<int, int>> out;
    for (int n = 2; n <= max_n; ++n)
        for (int m = 1; m < n; ++m) out.emplace_back(m, n);
    return out;
}

inline std::string problem_tag(double theta, int m, int n, double eta = 0.5) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "theta=%.6g M=%d N=%d eta=%.3g", theta, m, n, eta);
    return buf;
}

inline SuiteResult verify_linalg(double scale) {
    SuiteRecorder rec("linalg", scale);
    std::mt19937 rng(20240611);
    std::normal_distribution<double> normal;
    auto random_state = [&](std::size_t n) {
        std::vector<Complex> amps(std::size_t{1} << n);
        for (auto& a : amps) a = {normal(rng), normal(rng)};
        return StateVector::normalized(std::move(amps));
    };
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const StateVector s = random_state(n);
        const StateVector t = random_state(n);
        const Unitary d = build_D(0.02 + 0.019 * trial, 0.76 - 0.018 * trial);
        const std::size_t q0 = trial % n, q1 = (trial + 1) % n;
        const StateVector out = apply_gate(s, d, {q0, q1});
        rec.check("norm preserved", std::abs(out.norm_squared() - 1.0), 1e-12);
        rec.check("inner conjugate symmetry", std::abs(inner(s, t) - std::conj(inner(t, s))), 1e-14);
        const double p0 = project_branch(s, q1, Outcome::plus).norm_squared();
        const double p1 = project_branch(s, q1, Outcome::minus).norm_squared();
        rec.check("projection probabilities sum to one", std::abs(p0 + p1 - 1.0), 1e-12);
    }
    return rec.take();
}

inline SuiteResult verify_bounds(double scale) {
    SuiteRecorder rec("bounds", scale);
    for (double theta : grid_thetas()) {
        for (auto [m, n] : grid_copies()) {
            for (double eta : {0.5, 0.7, 0.9}) {
                const CloningProblem problem(theta, m, n, eta);
                const std::string tag = problem_tag(theta, m, n, eta);
                rec.check("oracle agreement " + tag,
                          std::abs(fidelity_bound(problem) - brute_force_fidelity(problem, 2000)), 1e-6);
                rec.check("bound attained at optimal angles " + tag,
                          std::abs(fidelity_bound(problem) - fidelity_at_angles(problem, optimal_phis(problem))), 1e-12);
            }
            const double p_exact = exact_clone_probability(theta, m, n);
            rec.check("hybrid endpoint p_s=1 " + problem_tag(theta, m, n),
                      std::abs(hybrid_fidelity_bound(theta, m, n, 1.0).fidelity_bound -
                               fidelity_bound(CloningProblem(theta, m, n))),
                      1e-12);
            rec.check("hybrid endpoint p_s=P_MN " + problem_tag(theta, m, n),
                      std::abs(hybrid_fidelity_bound(theta, m, n, p_exact).fidelity_bound - 1.0), 1e-12);
        }
        const double s = std::cos(2 * theta);
        rec.check("P_12 identity", std::abs(exact_clone_probability(theta, 1, 2) - 1.0 / (1.0 + s)), 1e-12);
    }
    for (double theta : {kPi / 8, 3 * kPi / 16, kPi / 4}) {
        for (int m = 1; m <= 3; ++m) {
            const CloningProblem problem(theta, m, 50);
            rec.check("Helstrom limit " + problem_tag(theta, m, 50),
                      std::abs(fidelity_bound(problem) - helstrom_bound(0.5, overlap_after_copies(theta, m))), 1e-6);
        }
    }
    return rec.take();
}

inline SuiteResult verify_gates(double scale) {
    SuiteRecorder rec("gates", scale);
    const Matrix id4 = Matrix::identity(4);
    const Unitary ix = kron(identity_gate(), pauli_x());
    const Unitary e = build_E();
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double t1 = 0.01 + (kQuarterPi - 0.01) * i / 19.0;
            const double t2 = 0.01 + (kQuarterPi - 0.01) * j / 19.0;
            const Unitary d = build_D(t1, t2);
            rec.check("D Hermitian", max_abs_diff(d.matrix(), d.matrix().adjoint()), 1e-12);
            rec.check("D self-inverse", max_abs_diff(d.matrix() * d.matrix(), id4), 1e-12);
            const double t3 = compose_angle(t1, t2);
            for (Sign sg : {Sign::plus, Sign::minus}) {
                const StateVector pair = kron(psi(t1, sg), psi(t2, sg));
                const StateVector merged = kron(psi(t3, sg), plus_state());
                rec.check("D compresses", max_abs_diff(apply_gate(pair, d, {0, 1}), merged), 1e-12);
                rec.check("D decompresses", max_abs_diff(apply_gate(merged, d, {0, 1}), pair), 1e-12);
            }
            const auto q = reflection_angles(t1, t2);
            rec.check("D reflection form",
                      max_abs_diff(d.matrix(), (build_Q(q.delta1) * ix * build_Q(q.delta2) * ix).matrix()), 1e-12);
            rec.check("D decomposition", max_abs_diff(decompose_D(t1, t2).product(), d.matrix()), 1e-10);
            rec.check_true("D decomposition uses four CNOTs", decompose_D(t1, t2).cnot_count() == 4);

            const double lo = std::min(t1, t2), hi = std::max(t1, t2);
            rec.check("S decomposition", max_abs_diff(decompose_S(lo, hi).product(), build_S(lo, hi).matrix()), 1e-10);
            const double delta = t1 + 2.0 * t2;
            rec.check("Q = E Lambda E", max_abs_diff(build_Q(delta).matrix(), (e * build_Lambda(delta) * e).matrix()),
                      1e-12);
        }
    }
    return rec.take();
}

inline SuiteResult verify_networks(double scale, Realization r) {
    SuiteRecorder rec(r == Realization::direct ? "networks" : "decomposed-networks", scale);
    for (double theta : grid_thetas()) {
        for (auto [m, n] : grid_copies()) {
            const CloningProblem problem(theta, m, n);
            const std::string tag = problem_tag(theta, m, n);
            const auto exact = evaluate_cloner(problem, Mode::exact, std::nullopt, r);
            rec.check("exact success " + tag, exact.success_deviation, 1e-10);
            rec.check("exact fidelity " + tag, exact.fidelity_deviation, 1e-10);
            for (double eta : {0.5, 0.7, 0.9}) {
                const auto approx = evaluate_cloner(CloningProblem(theta, m, n, eta), Mode::approx, std::nullopt, r);
                rec.check("approx fidelity " + problem_tag(theta, m, n, eta), approx.fidelity_deviation, 1e-10);
            }
            const double p_exact = exact_clone_probability(theta, m, n);
            double previous = 2.0;
            for (double p_s : {p_exact, 0.5 * (p_exact + 1.0), 1.0}) {
                const auto hybrid = evaluate_cloner(problem, Mode::hybrid, p_s, r);
                rec.check("hybrid success " + tag, hybrid.success_deviation, 1e-10);
                rec.check("hybrid fidelity " + tag, hybrid.fidelity_deviation, 1e-9);
                rec.check("hybrid fidelity non-increasing " + tag, std::max(0.0, hybrid.fidelity - previous), 1e-12);
                previous = hybrid.fidelity;
            }
        }
    }
    return rec.take();
}

}  // namespace detail

inline std::vector<SuiteResult> run_verification(const VerifyOptions& options = {}) {
    const double k = options.tolerance_scale;
    return {detail::verify_linalg(k), detail::verify_bounds(k), detail::verify_gates(k),
            detail::verify_networks(k, Realization::direct), detail::verify_networks(k, Realization::decomposed)};
}

}  // namespace cloneforge
