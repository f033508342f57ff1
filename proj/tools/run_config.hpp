#pragma once
// Scenario files: `key = value` lines, `#` comments. Omitted keys keep the
// default-system values. Powers and gains given in dB are converted here and
// nowhere else.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "igsrelay/model.hpp"

namespace igsrelay::cli {

struct SweepSpec {
    std::string var;  ///< c_x, p_r, p_s, p_max, pi_sr, pi_rd, pi_rr, pi_sd, r
    double start = 0.0;
    double stop = 1.0;
    int points = 11;
    bool db = false;  ///< start/stop are dB and points are spaced in dB
};

struct RunConfig {
    SystemParams sys = SystemParams::table_one(1);
    double p_r = 1.0;
    double c_x = 0.9;
    double r = 1.0;

    std::optional<SweepSpec> sweep;
    std::vector<std::string> metrics{"outage"};       ///< outage, ergodic, throughput
    std::vector<std::string> methods{"exact", "lb"};  ///< exact, lb, ub, mc

    std::string optimizer = "2d-cd";  ///< 1d-cx, 1d-pr, 2d-cd, grid
    std::string objective = "outage_ub";  ///< grid objective (optimize metric name)
    int grid_n = 1001;

    double r_start = 0.25;
    double r_stop = 5.0;
    int r_points = 20;

    std::string out;  ///< empty: stdout
    std::uint64_t seed = 1;
    std::int64_t samples = 1'000'000;
    int threads = 1;

    SignalParams signal() const { return {p_r, c_x}; }
};

/// One `key = value` assignment with where it came from, for error messages.
struct Assignment {
    std::string key;
    std::string value;
    std::string origin;  ///< "file.cfg:12" or "--set"
};

/// Parses scenario text; throws ConfigError naming the origin of bad lines.
std::vector<Assignment> parse_scenario(const std::string& text, const std::string& name);
std::vector<Assignment> read_scenario_file(const std::string& path);

/// "key=value" from --set.
Assignment parse_override(const std::string& kv);

/// Applies assignments in order (later wins) onto `cfg`, then validates.
/// Throws ConfigError with origin and key on any problem.
void apply_assignments(RunConfig& cfg, const std::vector<Assignment>& assignments);

/// Model and sweep invariants; throws ConfigError.
void validate(const RunConfig& cfg);

/// Sweep grid in linear units, and the axis values as written (dB or linear).
struct SweepPoint {
    double axis;    ///< as specified (dB when scale = db)
    double linear;  ///< value applied to the model
};
std::vector<SweepPoint> sweep_points(const SweepSpec& s);

/// Copy of cfg with the sweep variable set to `linear`.
RunConfig at_point(const RunConfig& cfg, const std::string& var, double linear);

/// Every key the scenario format accepts, for docs and error hints.
const std::vector<std::string>& known_keys();

} // namespace igsrelay::cli
