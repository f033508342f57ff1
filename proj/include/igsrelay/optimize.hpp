#pragma once
// Relay signal design: derivative-bisection searches on the Rayleigh outage
// upper bound, coordinate descent over (P_r, C_x), and an exhaustive grid
// search usable with every metric.

#include "igsrelay/model.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace igsrelay {

struct SearchConfig {
    double x_tol = 1e-8;
    double f_tol = 1e-12;
    int max_iters = 200;
    int grid_n = 1001;
    int threads = 1;

    /// Throws DomainError unless x_tol in [1e-10, 1e-3], f_tol > 0,
    /// max_iters >= 1, grid_n >= 101, threads >= 1.
    void validate() const;
};

struct Iterate {
    double p_r;
    double c_x;
    double objective;
};

struct OptResult {
    double p_r_star = 0.0;
    double c_x_star = 0.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<Iterate> trace;
};

enum class Metric {
    OutageExact,
    OutageLowerBound,
    OutageUpperBound,  ///< Rayleigh only
    ErgodicExact,
    ErgodicUpperBound,
    ErgodicLowerBound,  ///< Rayleigh only
    Throughput,         ///< r (1 - exact outage)
};

std::string_view to_string(Metric m);
/// Parses the names produced by to_string; throws DomainError otherwise.
Metric metric_from_string(std::string_view name);
/// True for ergodic rates and throughput, false for outage probabilities.
bool is_maximized(Metric m);
double evaluate_metric(Metric m, const SystemParams& sys, const RateTarget& target, double p_r, double c_x);

/// d(1 - UB)/dC_x of the Rayleigh end-to-end outage upper bound, in the
/// factored form x e^{-E} S(x) / (c h + 1)^2.
double ub_derivative_cx(const SystemParams& sys, const RateTarget& target, double p_r, double c_x);

/// dUB/dP_r of the same bound, -e^{-g} S(P_r) / (P_r (P_r + d)^2), with the
/// dependence of alpha on P_r included.
double ub_derivative_pr(const SystemParams& sys, const RateTarget& target, double p_r, double c_x);

/// Derivative in P_r of the exact proper-signaling Rayleigh outage.
double pgs_derivative_pr(const SystemParams& sys, const RateTarget& target, double p_r);

/// Minimizer of the upper bound over C_x in [0, 1] at fixed P_r.
OptResult bisect_circularity(const SystemParams& sys, const RateTarget& target, double p_r,
                             const SearchConfig& cfg = {});

/// Minimizer over P_r in (0, p_max] at fixed C_x. C_x = 0 minimizes the exact
/// proper-signaling outage; C_x > 0 the upper bound.
OptResult bisect_power(const SystemParams& sys, const RateTarget& target, double c_x, const SearchConfig& cfg = {});

/// Alternating bisect_power / bisect_circularity on the upper bound from
/// (p_max, 0). The trace holds one entry per accepted iterate.
OptResult coordinate_descent(const SystemParams& sys, const RateTarget& target, const SearchConfig& cfg = {});

using Objective = std::function<double(double p_r, double c_x)>;

/// Exhaustive search on p_r = p_max i / n (i = 1..n), c_x = j / (n - 1)
/// (j = 0..n-1). Ties go to the smallest p_r, then the smallest c_x.
OptResult grid_search(const SystemParams& sys, const Objective& objective, bool maximize, const SearchConfig& cfg);
OptResult grid_search(const SystemParams& sys, const RateTarget& target, Metric metric, const SearchConfig& cfg);

/// One-dimensional grids with the other coordinate held fixed.
OptResult grid_search_circularity(const Objective& objective, bool maximize, double p_r, int n);
OptResult grid_search_power(const Objective& objective, bool maximize, double p_max, double c_x, int n);

} // namespace igsrelay
