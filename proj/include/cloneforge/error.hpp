#pragma once

#include <stdexcept>
#include <string>

namespace cloneforge {

enum class ErrorKind {
    usage,
    identical_states,
    degenerate_subspace,
    not_a_separation,
    out_of_range,
    impossible_branch,
    non_unitary,
    internal,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::usage: return "usage";
        case ErrorKind::identical_states: return "identical states";
        case ErrorKind::degenerate_subspace: return "degenerate subspace";
        case ErrorKind::not_a_separation: return "not a separation";
        case ErrorKind::out_of_range: return "out of range";
        case ErrorKind::impossible_branch: return "impossible branch";
        case ErrorKind::non_unitary: return "non-unitary request";
        case ErrorKind::internal: return "internal consistency";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace cloneforge
