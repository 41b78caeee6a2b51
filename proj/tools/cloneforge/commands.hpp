#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cloneforge/gates.hpp"
#include "cloneforge/networks.hpp"
#include "cloneforge/verify.hpp"

namespace cloneforge::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kConfigError = 2,
    kStrictDeviation = 3,
};

/// Deviation above which `simulate --strict` fails.
inline constexpr double kStrictTolerance = 1e-8;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct Sweep {
    std::string param;  // "p_s", "theta" or "eta_plus"
    std::optional<double> start;
    std::optional<double> stop;
    int steps = 11;
};

/// Parameters shared by bounds, simulate and tradeoff. Angles are radians.
struct RunConfig {
    double theta = kPi / 8;
    int m = 1;
    int n = 2;
    double eta_plus = 0.5;
    Mode mode = Mode::approx;
    std::optional<double> p_s;
    std::optional<Sweep> sweep;
    Format format = Format::json;
    std::optional<std::string> output;
    bool strict = false;
    /// Deviation allowed under `strict`; not exposed as a flag.
    double strict_tolerance = kStrictTolerance;
    bool decomposed = false;
};

struct DecomposeConfig {
    char gate = 'D';
    double angle_a = kPi / 8;
    double angle_b = kPi / 8;
};

struct CommandOutput {
    int exit_code = kSuccess;
    std::string text;
};

/// "%.12g"
std::string format_number(double x);

/// x rounded to 12 significant digits, for JSON emission.
double round12(double x);

Mode parse_mode(const std::string& s);
Format parse_format(const std::string& s);

/// Applies the fields present in a JSON config object on top of `config`.
/// Accepts theta/overlap/degrees, m, n, eta_plus, mode, p_s, sweep, format,
/// output, strict, decomposed.
void apply_json_config(const nlohmann::json& j, RunConfig& config);

/// Values of the swept parameter, start to stop inclusive.
std::vector<double> sweep_points(const Sweep& sweep);

CommandOutput cmd_bounds(const RunConfig& config);
CommandOutput cmd_simulate(const RunConfig& config);
CommandOutput cmd_tradeoff(const RunConfig& config);
CommandOutput cmd_decompose(const DecomposeConfig& config);
CommandOutput cmd_verify(const VerifyOptions& options);

/// JSON circuit document for a decomposition (see cmd_decompose).
nlohmann::ordered_json circuit_to_json(char gate, double angle_a, double angle_b, const CircuitDecomposition& circuit,
                                       const Unitary& target);

/// Rebuilds placements from a JSON circuit document.
std::vector<GatePlacement> circuit_from_json(const nlohmann::json& doc);

/// Full command-line driver. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cloneforge::cli
