#pragma once
// The acceptance suite: one report per criterion with the measured value
// next to its threshold. Shared by the acceptance binary and `validate`.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace igsrelay {

struct AcceptanceOptions {
    std::uint64_t seed = 20180901;
    std::int64_t samples = 1'000'000;  ///< Monte Carlo samples per point
    int threads = 1;
    std::set<std::string> only;  ///< criterion ids to run; empty runs all
};

struct CriterionReport {
    std::string id;  ///< "1" ... "12", with letters for the trend checks
    std::string title;
    bool pass = false;
    std::string measured;
    std::string threshold;
    double seconds = 0.0;
};

/// Ids in run order.
std::vector<std::string> acceptance_ids();

/// Runs the selected criteria; `on_report` sees each report as it finishes.
/// Exceptions inside a criterion become a failed report.
std::vector<CriterionReport> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionReport&)>& on_report = {});

/// "PASS [id] title: measured (threshold) [t s]"
std::string format_report(const CriterionReport& r);

} // namespace igsrelay
