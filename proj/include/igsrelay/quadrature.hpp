#pragma once

#include <functional>

namespace igsrelay {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 400;

    /// Throws DomainError unless rel_tol in (0, 1e-4], abs_tol in (0, 1e-10],
    /// max_subdivisions >= 50.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [lo, hi].
/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg);

/// Integral over (0, inf) via x = scale * t / (1 - t), t in (0, 1).
/// `scale` should be the decay length of the integrand.
QuadratureResult integrate_semi_infinite(const Integrand& f, double scale, const QuadratureConfig& cfg);

/// As integrate / integrate_semi_infinite, but throws NumericalError with
/// diagnostics (`what` prefix, error estimate, subdivisions) on non-convergence.
double integrate_or_throw(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg,
                          const char* what);
double integrate_semi_infinite_or_throw(const Integrand& f, double scale, const QuadratureConfig& cfg,
                                        const char* what);

} // namespace igsrelay
