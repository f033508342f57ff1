#pragma once
// End-to-end ergodic rate E{min(R_sr, R_rd)}: exact double integral, the
// closed-form upper bound and the Rayleigh lower bound.

#include "igsrelay/model.hpp"
#include "igsrelay/outage.hpp"
#include "igsrelay/quadrature.hpp"

#include <vector>

namespace igsrelay {

// Coefficients are kept in long double: with nearly coincident poles they
// grow large and alternate in sign, and the expansion sums them back to O(1).
struct PoleTerm {
    long double root = 0.0L;         ///< pole location psi = -root
    long double coefficient = 0.0L;  ///< weight of 1/(psi + root)
};

/// Index tuple of one term of the upper bound's quadruple sum.
struct ErgodicIndex {
    int m = 0;
    int mp = 0;
    int k = 0;
    int kp = 0;
};

/// Partial fractions of
///   F(psi) = (psi + 1) / ((psi+1-C)(psi+1+C) (a1 psi + b1)^p (a2 psi + b2)^q)
/// with p = k + m_rr and q = k' + m_sd:
///   F = sum_i lambda_i / (psi + root_i)
///     + sum_j zeta_j / (a1 psi + b1)^j + sum_l xi_l / (a2 psi + b2)^l.
/// At C = 0 the two simple poles merge and `simple_terms` holds one entry.
struct PartialFractionExpansion {
    std::vector<PoleTerm> simple_terms;
    std::vector<long double> sr_pole_terms;  ///< zeta_1 .. zeta_p
    std::vector<long double> sd_pole_terms;  ///< xi_1 .. xi_q
    long double a1 = 0.0L, b1 = 0.0L, a2 = 0.0L, b2 = 0.0L;
    ErgodicIndex context;

    /// Sum of the expansion at psi.
    long double evaluate(long double psi) const;
    /// The rational function itself, evaluated directly.
    long double rational(long double psi) const;
};

/// Relative distance below which two pole locations count as coincident.
inline constexpr double kPoleCollisionTol = 1e-9;

/// Throws DegenerateError if two pole locations coincide (within
/// kPoleCollisionTol) in a way that changes the pole structure.
PartialFractionExpansion compute_partial_fractions(const SystemParams& sys, const SignalParams& sig,
                                                   const ErgodicIndex& idx);

/// int_0^inf (1 - p_e2e_exact(r)) dr, nested adaptive quadrature.
EvalResult r_e2e_exact(const SystemParams& sys, const SignalParams& sig, const QuadratureConfig& quad = {});

/// Largest tolerated rounding error bound of the closed-form upper bound.
inline constexpr double kUbRoundingBudget = 1e-7;

/// Closed-form upper bound: int_0^inf (1 - p_e2e_lb(r)) dr in terms of Xi_n
/// and Tricomi U. Exact at c_x = 0. c_x is clamped to kCircularityEdge.
/// Throws DegenerateError on pole collisions and NumericalError when nearly
/// coincident poles push the rounding error bound past kUbRoundingBudget.
EvalResult r_e2e_ub(const SystemParams& sys, const SignalParams& sig);

/// The same bound by direct quadrature of its defining integral.
double r_e2e_ub_by_quadrature(const SystemParams& sys, const SignalParams& sig, const QuadratureConfig& quad = {});

/// Rayleigh-only closed-form lower bound. Throws DegenerateError when a
/// partial fraction denominator vanishes.
EvalResult r_e2e_rayleigh_lb(const SystemParams& sys, const SignalParams& sig);

/// Upper end of the rate integrals: max(20, r with 1 - p_e2e_lb(r) < 1e-12).
double ergodic_rate_cap(const SystemParams& sys, const SignalParams& sig);

} // namespace igsrelay
