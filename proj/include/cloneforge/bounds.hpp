#pragma once

// Closed-form limits for two-state M -> N cloning: optimal global fidelity,
// exact-cloning and state-separation probabilities, the fidelity/probability
// trade-off, and a brute-force optimizer that checks the fidelity formula.
//
// Single-copy states are |psi_+-(theta)> = cos(theta)|+> +- sin(theta)|->,
// with 0 <= theta <= pi/4, so their overlap is s = cos(2 theta).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cloneforge/error.hpp"

namespace cloneforge {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

/// Slack admitted on theta above pi/4 so that decimal renderings of pi/4 are accepted.
inline constexpr double kAngleSlack = 1e-9;
/// Relative slack on probability ranges at their analytic endpoints.
inline constexpr double kProbabilitySlack = 1e-12;

namespace detail {

inline double checked_theta(double theta, const char* what = "theta") {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kQuarterPi + kAngleSlack)
        throw Error(ErrorKind::out_of_range, std::string(what) + " must lie in [0, pi/4], got " + std::to_string(theta));
    return std::min(theta, kQuarterPi);
}

inline double checked_unit(double x, const char* what) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
        throw Error(ErrorKind::out_of_range, std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
    return x;
}

/// cos(2 theta), exactly zero for orthogonal states.
inline double single_overlap(double theta) {
    theta = checked_theta(theta);
    return theta == kQuarterPi ? 0.0 : std::cos(2.0 * theta);
}

inline double half_arccos(double c) { return 0.5 * std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace detail

/// A two-state cloning task: M copies of |psi_+-(theta)> in, N copies out,
/// with prior eta_plus on the + state.
class CloningProblem {
public:
    CloningProblem(double theta, int m_copies, int n_copies, double eta_plus = 0.5)
        : theta_(detail::checked_theta(theta)), m_(m_copies), n_(n_copies),
          eta_plus_(detail::checked_unit(eta_plus, "eta_plus")) {
        if (m_ < 1) throw Error(ErrorKind::usage, "M must be at least 1");
        if (n_ <= m_) throw Error(ErrorKind::usage, "N must exceed M");
    }

    double theta() const noexcept { return theta_; }
    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    double eta_plus() const noexcept { return eta_plus_; }
    double eta_minus() const noexcept { return 1.0 - eta_plus_; }
    double eta(bool plus) const noexcept { return plus ? eta_plus() : eta_minus(); }

private:
    double theta_;
    int m_;
    int n_;
    double eta_plus_;
};

struct OptimalAngles {
    double phi_plus;
    double phi_minus;
};

/// |Phi_+-> = mu_+- |psi^N_+> + nu_+- |psi^N_->
struct CloneCoefficients {
    double mu_plus;
    double nu_plus;
    double mu_minus;
    double nu_minus;
};

struct TradeoffPoint {
    double p_success;
    double fidelity_bound;
};

/// (cos 2 theta)^k, the overlap of k-fold copies.
inline double overlap_after_copies(double theta, int k) {
    if (k < 1) throw Error(ErrorKind::usage, "copy count must be at least 1");
    return std::pow(detail::single_overlap(theta), k);
}

/// The first-octant angle theta_k with cos(2 theta_k) = (cos 2 theta)^k.
inline double angle_for_copies(double theta, int k) {
    if (k == 1) return detail::checked_theta(theta);
    return detail::half_arccos(overlap_after_copies(theta, k));
}

/// theta_3 with cos(2 theta_3) = cos(2 theta_a) cos(2 theta_b).
inline double compose_angle(double theta_a, double theta_b) {
    const double c = detail::single_overlap(theta_a) * detail::single_overlap(theta_b);
    return detail::half_arccos(c);
}

namespace detail {

inline void reject_identical(const CloningProblem& problem) {
    if (problem.theta() == 0.0) throw Error(ErrorKind::identical_states, "theta = 0 leaves nothing to clone");
}

}  // namespace detail

/// Global fidelity eta_+ cos^2(theta_N - phi_+) + eta_- cos^2(theta_N + phi_-)
/// of output states cos(phi)|gamma> + sin(phi)|delta>.
inline double fidelity_at_angles(const CloningProblem& problem, const OptimalAngles& angles) {
    const double theta_n = angle_for_copies(problem.theta(), problem.n());
    const double a = std::cos(theta_n - angles.phi_plus);
    const double b = std::cos(theta_n + angles.phi_minus);
    return problem.eta_plus() * a * a + problem.eta_minus() * b * b;
}

/// Output-state angles maximizing the global fidelity under the unitarity
/// constraint phi_+ - phi_- = 2 theta_M.
inline OptimalAngles optimal_phis(const CloningProblem& problem) {
    detail::reject_identical(problem);
    const double theta_m = angle_for_copies(problem.theta(), problem.m());
    const double theta_n = angle_for_copies(problem.theta(), problem.n());
    const double gap = 2.0 * theta_n - 2.0 * theta_m;
    const double prior_gap = problem.eta_plus() - problem.eta_minus();

    // Positive cosine root; the sine root takes the sign of eta_+ - eta_-.
    const double root = std::hypot(std::cos(gap), prior_gap * std::sin(gap));
    const double cos_sum = std::cos(gap) / root;
    const double sin_sum = prior_gap == 0.0 ? 0.0 : prior_gap * std::sin(gap) / root;
    const double sum = std::atan2(sin_sum, cos_sum);
    return {0.5 * sum + theta_m, 0.5 * sum - theta_m};
}

/// Least upper bound on the global fidelity of deterministic M -> N cloning.
inline double fidelity_bound(const CloningProblem& problem) {
    detail::reject_identical(problem);
    const double theta_m = angle_for_copies(problem.theta(), problem.m());
    const double theta_n = angle_for_copies(problem.theta(), problem.n());
    const double s = std::sin(2.0 * theta_n - 2.0 * theta_m);
    const double radicand = 1.0 - 4.0 * problem.eta_plus() * problem.eta_minus() * s * s;
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, radicand)));
}

inline CloneCoefficients clone_coefficients(const OptimalAngles& angles, double theta_n) {
    theta_n = detail::checked_theta(theta_n, "theta_n");
    const double s2 = std::sin(2.0 * theta_n);
    if (s2 < 1e-12) throw Error(ErrorKind::degenerate_subspace, "sin(2 theta_N) vanishes");
    return {std::sin(theta_n + angles.phi_plus) / s2, std::sin(theta_n - angles.phi_plus) / s2,
            std::sin(theta_n + angles.phi_minus) / s2, std::sin(theta_n - angles.phi_minus) / s2};
}

/// Maximum probability of correctly discriminating two pure states.
inline double helstrom_bound(double eta_plus, double overlap) {
    detail::checked_unit(eta_plus, "eta_plus");
    detail::checked_unit(overlap, "overlap");
    const double radicand = 1.0 - 4.0 * eta_plus * (1.0 - eta_plus) * overlap * overlap;
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, radicand)));
}

/// Maximum success probability of exact M -> N cloning, (1 - s^M)/(1 - s^N).
inline double exact_clone_probability(double theta, int m, int n) {
    theta = detail::checked_theta(theta);
    if (m < 1 || n <= m) throw Error(ErrorKind::usage, "need N > M >= 1");
    if (theta == 0.0) throw Error(ErrorKind::identical_states, "theta = 0 gives 0/0");
    const double s = detail::single_overlap(theta);
    return (1.0 - std::pow(s, m)) / (1.0 - std::pow(s, n));
}

/// Maximum probability of separating a state pair from overlap_in to overlap_out.
inline double separation_bound(double overlap_in, double overlap_out) {
    detail::checked_unit(overlap_in, "overlap_in");
    detail::checked_unit(overlap_out, "overlap_out");
    if (overlap_out > overlap_in) throw Error(ErrorKind::not_a_separation, "overlap_out exceeds overlap_in");
    if (overlap_out == overlap_in) return 1.0;
    return std::min(1.0, (1.0 - overlap_in) / (1.0 - overlap_out));
}

/// Maximum probability of error-free (unambiguous) discrimination.
inline double idp_probability(double overlap) { return 1.0 - detail::checked_unit(overlap, "overlap"); }

namespace detail {

/// Accepts p in [low, 1] up to rounding slack, clamping onto the interval.
inline double checked_success(double p, double low) {
    const double slack = kProbabilitySlack * std::max(1.0, low);
    if (!std::isfinite(p) || p < low - slack || p > 1.0 + slack)
        throw Error(ErrorKind::out_of_range,
                    "success probability " + std::to_string(p) + " outside [" + std::to_string(low) + ", 1]");
    return std::clamp(p, low, 1.0);
}

}  // namespace detail

/// Angle of the separated pair reached with success probability p_s, starting
/// from theta_m and never beyond theta_n.
inline double separated_angle(double theta_m, double theta_n, double p_s) {
    theta_m = detail::checked_theta(theta_m, "theta_m");
    theta_n = detail::checked_theta(theta_n, "theta_n");
    if (theta_n < theta_m) throw Error(ErrorKind::not_a_separation, "theta_n is below theta_m");
    const double c_m = detail::single_overlap(theta_m);
    const double c_n = detail::single_overlap(theta_n);
    p_s = detail::checked_success(p_s, separation_bound(c_m, c_n));
    const double c = std::clamp(1.0 - (1.0 - c_m) / p_s, c_n, c_m);
    return std::clamp(detail::half_arccos(c), theta_m, theta_n);
}

/// Fidelity bound for the post-selected ensemble of a hybrid cloner with
/// success probability p_s (equal priors).
inline TradeoffPoint hybrid_fidelity_bound(double theta, int m, int n, double p_s) {
    const double p_exact = exact_clone_probability(theta, m, n);
    p_s = detail::checked_success(p_s, p_exact);
    const double s = detail::single_overlap(theta);
    const double clone_overlap = std::pow(s, n);
    const double p_idp = idp_probability(std::pow(s, m));
    const double spread = std::max(0.0, p_s * p_s - (p_s - p_idp) * (p_s - p_idp));
    const double f = 0.5 * (1.0 + clone_overlap * (1.0 - p_idp / p_s) +
                            std::sqrt((1.0 - clone_overlap * clone_overlap) * spread) / p_s);
    return {p_s, std::min(1.0, f)};
}

/// Infinite-clone limit of the hybrid trade-off: the error/inconclusive
/// trade-off of state identification.
inline double hybrid_limit(double p_s, double p_idp) {
    detail::checked_unit(p_idp, "p_idp");
    if (!(p_s > 0.0)) throw Error(ErrorKind::out_of_range, "p_s must be positive");
    p_s = detail::checked_success(p_s, p_idp);
    const double spread = std::max(0.0, p_s * p_s - (p_s - p_idp) * (p_s - p_idp));
    return 0.5 * (1.0 + std::sqrt(spread) / p_s);
}

/// Per-copy fidelity of using D(theta_1, theta_1) as a 1 -> 2 cloner of
/// |psi_+-(theta_3)>. Unlike fidelity_bound this is an amplitude overlap,
/// |<psi(theta_3)|psi(theta_1)>|; square it for the squared-overlap figure.
inline double d_cloner_local_fidelity(double theta3, double theta1) {
    theta3 = detail::checked_theta(theta3, "theta3");
    theta1 = detail::checked_theta(theta1, "theta1");
    if (theta1 > theta3) throw Error(ErrorKind::out_of_range, "theta1 must not exceed theta3");
    return std::cos(theta3 - theta1);
}

/// The copies are in a product state, so the two-copy amplitude overlap is
/// the square of the per-copy one.
inline double d_cloner_global_fidelity(double theta3, double theta1) {
    const double f = d_cloner_local_fidelity(theta3, theta1);
    return f * f;
}

/// Independent check of fidelity_bound: maximizes
/// eta_+ cos^2(theta_N - phi_+) + eta_- cos^2(theta_N + phi_-) over phi_+ with
/// phi_- = phi_+ - 2 theta_M. A grid over one full period of phi_+ is
/// followed by golden-section refinement around the best grid point.
inline double brute_force_fidelity(const CloningProblem& problem, int grid_size) {
    if (grid_size < 1000) throw Error(ErrorKind::usage, "grid_size must be at least 1000");
    const double s = std::cos(2.0 * problem.theta());
    const double theta_m = 0.5 * std::acos(std::clamp(std::pow(s, problem.m()), -1.0, 1.0));
    const double theta_n = 0.5 * std::acos(std::clamp(std::pow(s, problem.n()), -1.0, 1.0));
    const double eta_p = problem.eta_plus();
    const double eta_m = 1.0 - eta_p;
    auto objective = [&](double phi_plus) {
        const double a = std::cos(theta_n - phi_plus);
        const double b = std::cos(theta_n + phi_plus - 2.0 * theta_m);
        return eta_p * a * a + eta_m * b * b;
    };

    const double lo = -0.5 * kPi;
    const double step = kPi / grid_size;
    double best_phi = lo;
    double best = objective(lo);
    for (int i = 1; i < grid_size; ++i) {
        const double phi = lo + i * step;
        const double f = objective(phi);
        if (f > best) {
            best = f;
            best_phi = phi;
        }
    }

    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_phi - step;
    double b = best_phi + step;
    double x1 = b - inv_golden * (b - a);
    double x2 = a + inv_golden * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_golden * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_golden * (b - a);
            f1 = objective(x1);
        }
    }
    return std::max({best, f1, f2, objective(0.5 * (a + b))});
}

}  // namespace cloneforge
