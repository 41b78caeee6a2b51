#pragma once

#include <cmath>
#include <cstddef>

#include "cloneforge/linalg.hpp"

namespace cloneforge {

enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

/// |psi_+-(theta)> = cos(theta)|+> +- sin(theta)|->
inline StateVector psi(double theta, Sign sign) {
    return StateVector({std::cos(theta), sign_value(sign) * std::sin(theta)});
}

inline StateVector plus_state() { return StateVector::basis(1, 0); }
inline StateVector minus_state() { return StateVector::basis(1, 1); }

/// `count`-fold tensor power of a single-qubit state.
inline StateVector tensor_power(const StateVector& single, std::size_t count) {
    if (count == 0) throw Error(ErrorKind::usage, "tensor power needs at least one factor");
    StateVector out = single;
    for (std::size_t i = 1; i < count; ++i) out = kron(out, single);
    return out;
}

}  // namespace cloneforge
