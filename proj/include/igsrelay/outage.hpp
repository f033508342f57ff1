#pragma once

#include "igsrelay/model.hpp"
#include "igsrelay/quadrature.hpp"

#include <optional>
#include <string_view>

namespace igsrelay {

enum class Method { ExactIntegral, LowerBound, UpperBound, ClosedFormExact, MonteCarlo };

std::string_view to_string(Method m);

/// A metric value tagged with how it was obtained. `std_error` is set iff
/// the method is MonteCarlo.
struct EvalResult {
    double value = 0.0;
    Method method = Method::ExactIntegral;
    std::optional<double> std_error;

    static EvalResult exact(double v) { return {v, Method::ExactIntegral, std::nullopt}; }
    static EvalResult closed(double v) { return {v, Method::ClosedFormExact, std::nullopt}; }
    static EvalResult lower(double v) { return {v, Method::LowerBound, std::nullopt}; }
    static EvalResult upper(double v) { return {v, Method::UpperBound, std::nullopt}; }
    static EvalResult monte_carlo(double v, double se) { return {v, Method::MonteCarlo, se}; }
};

// ---- first hop (source -> relay) -----------------------------------------

/// Exact first hop outage: expectation over the RSI gain of the regularized
/// lower incomplete gamma at the outage threshold, by semi-infinite quadrature.
EvalResult p_sr_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                      const QuadratureConfig& quad = {});

/// Closed-form lower bound obtained by replacing the effective RSI circularity
/// P_r g C/(P_r g + 1) with C. Exact when c_x = 0.
EvalResult p_sr_lb(const SystemParams& sys, const SignalParams& sig, const RateTarget& target);

/// Rayleigh-only exact first hop outage (one-dimensional expectation).
EvalResult p_sr_rayleigh_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                               const QuadratureConfig& quad = {});

/// Rayleigh-only Jensen upper bound 1 - exp(-(P_r pi_rr + 1) Psi_r(alpha C) / (P_s pi_sr)).
EvalResult p_sr_rayleigh_ub(const SystemParams& sys, const SignalParams& sig, const RateTarget& target);

/// Second derivative in g_rr of the exponent f(g_rr) = sqrt(A g^2 + B g + C) - (D g + F)
/// of the Rayleigh first hop success probability. Nonpositive everywhere.
double convexity_witness(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                         double g_rr);

/// The exponent f(g_rr) itself; exposed for finite-difference checks.
double convexity_exponent(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                          double g_rr);

// ---- second hop (relay -> destination) -----------------------------------

/// Exact second hop outage (finite double sum; no bounding on this hop).
EvalResult p_rd_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target);

// ---- end to end ----------------------------------------------------------

/// 1 - (1 - P_sr)(1 - P_rd) with the exact first hop integral.
EvalResult p_e2e_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                       const QuadratureConfig& quad = {});

/// Closed quadruple-sum lower bound. Exact when c_x = 0.
EvalResult p_e2e_lb(const SystemParams& sys, const SignalParams& sig, const RateTarget& target);

/// Rayleigh-only closed-form upper bound.
EvalResult p_e2e_rayleigh_ub(const SystemParams& sys, const SignalParams& sig, const RateTarget& target);

/// Limit of the maximally improper Rayleigh upper bound as pi_rr -> inf at
/// fixed relay power p_r.
double asymptotic_k(const SystemParams& sys, double p_r, const RateTarget& target);

/// T = r (1 - P_out).
double throughput(const RateTarget& target, double p_out);

} // namespace igsrelay
