#pragma once

// Special functions used by the outage and ergodic closed forms. Everything
// here is pure; tolerances come from SpecFunConfig.

namespace igsrelay::specfun {

struct SpecFunConfig {
    double rel_tol = 1e-10;
    int max_terms = 500;

    /// Throws DomainError unless 0 < rel_tol < 1e-3 and max_terms >= 64.
    void validate() const;
};

/// Gamma(a) = (a-1)! for integer 1 <= a <= 170.
double gamma_int(int a);

/// Gamma(a, x) for integer a >= 1 via the finite series
/// (a-1)! e^{-x} sum_{m<a} x^m/m!.
double upper_incomplete_gamma_int(int a, double x);

/// log Gamma(a, x); finite for x up to ~1e300.
double log_upper_incomplete_gamma_int(int a, double x);

/// Regularized forms Q = Gamma(a,x)/Gamma(a) and P = 1 - Q. P is summed
/// directly for x < a so small probabilities keep full relative accuracy.
double regularized_upper_gamma_int(int a, double x);
double regularized_lower_gamma_int(int a, double x);

/// E_n(x) = int_1^inf e^{-xt} t^{-n} dt, n >= 1, x > 0.
double exp_integral_en(int n, double x, const SpecFunConfig& cfg = {});

/// Xi_n(x) = e^x E_n(x). Above x = 30 the product is evaluated as one
/// continued fraction so it stays finite for arbitrarily large x.
double xi_n(int n, double x, const SpecFunConfig& cfg = {});

/// Threshold above which xi_n switches to the fused continued fraction.
inline constexpr double kXiFusedThreshold = 30.0;

/// Tricomi confluent hypergeometric U(a, b, z) for a > 0, z > 0 from its
/// integral representation, by adaptive Gauss-Kronrod quadrature. Valid for
/// nonpositive b where Kummer-based formulas break down.
double tricomi_u(double a, double b, double z, const SpecFunConfig& cfg = {});

/// Extended-precision variants for sums with heavy cancellation. Accurate to
/// a few long double ulps; `a`, `b` are integers here.
long double xi_n_ext(int n, long double x);
long double tricomi_u_ext(int a, int b, long double z);

} // namespace igsrelay::specfun
