#pragma once

#include <optional>
#include <string>
#include <vector>
#include <ostream>

#include "run_config.hpp"

namespace igsrelay::cli {

enum ExitCode { kOk = 0, kValidationFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

/// CSV goes to cfg.out (or `out` when empty); notes and reports to `log`.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_optimize(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_throughput(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Acceptance suite; seed/samples/threads override the suite defaults only
/// when given.
struct ValidateOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<int> threads;
    std::vector<std::string> only;  ///< criterion ids; empty runs all
};
int cmd_validate(const RunConfig& cfg, const ValidateOverrides& ov, std::ostream& out, std::ostream& log);

} // namespace igsrelay::cli
