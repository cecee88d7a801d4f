#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gphase/fringes.hpp"

namespace gphase {

// Config-driven scenario runner behind the CLI. Configs are flat structured
// text ([section] headers + key = value lines, '#' comments); reports are
// line-oriented key = value blocks. Both formats are documented in the README.

struct StateSpec {
    enum class Kind { maximally_mixed, weights, pure };
    Kind kind = Kind::maximally_mixed;
    std::vector<double> weights;  // kind = weights: 2J+1 values, +J..-J order
    Axis axis{0, 0, 1};           // kind = pure
    int two_m = 0;                // kind = pure

    bool operator==(const StateSpec&) const = default;
};

struct CircuitSpec {
    enum class Kind { polygon, cap, rotation };
    Kind kind = Kind::polygon;
    std::vector<Vec3> vertices;  // polygon
    Axis axis{0, 0, 1};          // cap / rotation
    double polar_angle = 0;      // cap
    int orientation = +1;        // cap
    double angle = 0;            // rotation: total angle about axis

    bool operator==(const CircuitSpec&) const = default;
};

struct FringeSpec {
    int chi_count = 32;
    double noise_sigma = 0;
    std::string input_csv;   // when set, fit this file instead of synthesizing
    std::string csv_output = "fringes.csv";

    bool operator==(const FringeSpec&) const = default;
};

struct ScenarioConfig {
    std::string scenario;
    int two_j = 1;
    std::optional<StateSpec> state;      // scenario default when absent
    std::optional<CircuitSpec> circuit;  // scenario default when absent
    int samples = 1024;
    int steps_per_edge = 10000;
    Tolerances tolerances;
    std::uint64_t seed = 1;
    std::string output = "report.txt";
    double tilt = 1.0471975511965976;  // singularity-loop axis tilt, radians
    FringeSpec fringes;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parse/validation failure, addressed to the offending line and key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& what_arg)
        : std::runtime_error(format(line, key, what_arg)), line_(line), key_(std::move(key)) {}

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    static std::string format(int line, const std::string& key, const std::string& msg);
    int line_ = 0;
    std::string key_;
};

/// Total validation: unknown keys and malformed values are rejected with the
/// line number and key path.
ScenarioConfig parse_config(const std::string& text);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& c);

/// Convert the angle-valued fields (circuit polar_angle/angle, tilt) from
/// degrees to radians. The CLI applies this at the boundary for --degrees.
void degrees_to_radians(ScenarioConfig& c);

struct PhaseReport {
    std::string scenario;

    std::optional<double> phase_mod_2pi;
    std::optional<double> visibility;
    std::optional<bool> singular;
    std::optional<double> unwrapped_final;
    std::optional<long> winding;
    std::vector<double> singular_crossings;
    std::optional<double> alpha;

    struct BetaEntry {
        int two_m = 0;
        double beta = 0;
        double expected = 0;  // -m * alpha, principal value
        double error = 0;     // circular distance between them
        std::optional<double> j_est;
    };
    std::vector<BetaEntry> betas;

    // Scenario-specific extras, serialized in order as "key = value".
    std::vector<std::pair<std::string, std::string>> extra;

    // Full traces for programmatic consumers (not serialized).
    std::vector<std::pair<std::string, PhaseTrace>> traces;

    /// Deterministic line-oriented rendering; identical configs give
    /// byte-identical text.
    std::string to_text() const;
};

const std::vector<std::string>& builtin_scenarios();

/// One-line description per built-in; keys match builtin_scenarios().
const std::map<std::string, std::string>& scenario_descriptions();

/// Execute a scenario: compute, write the report (and any CSV artifacts)
/// under out_dir, and return the report. Throws ConfigError for invalid
/// configs and std::runtime_error for numerical failures.
PhaseReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir = ".");

}  // namespace gphase
