#include "igsrelay/quadrature.hpp"

#include "igsrelay/errors.hpp"

#include "detail/gauss_kronrod.hpp"

#include <cmath>
#include <sstream>

namespace igsrelay {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4)) {
        throw DomainError("QuadratureConfig: rel_tol must lie in (0, 1e-4]");
    }
    if (!(abs_tol > 0.0 && abs_tol <= 1e-10)) {
        throw DomainError("QuadratureConfig: abs_tol must lie in (0, 1e-10]");
    }
    if (max_subdivisions < 50) {
        throw DomainError("QuadratureConfig: max_subdivisions must be >= 50");
    }
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg) {
    cfg.validate();
    const auto r = detail::adaptive_gk<double>(f, lo, hi, cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
    return {r.value, r.abs_error, r.evaluations, r.subdivisions, r.converged};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double scale, const QuadratureConfig& cfg) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("integrate_semi_infinite: scale must be positive and finite");
    }
    auto mapped = [&](double t) {
        const double one_minus = 1.0 - t;
        const double x = scale * t / one_minus;
        if (!std::isfinite(x)) {
            return 0.0;
        }
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * scale / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, cfg);
}

namespace {

[[noreturn]] void throw_quadrature(const char* what, const QuadratureResult& r) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (value=" << r.value << ", error estimate="
       << r.abs_error << ", subdivisions=" << r.subdivisions << ", evaluations=" << r.evaluations
       << ")";
    throw NumericalError(os.str());
}

} // namespace

double integrate_or_throw(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg,
                          const char* what) {
    const auto r = integrate(f, lo, hi, cfg);
    if (!r.converged) {
        throw_quadrature(what, r);
    }
    return r.value;
}

double integrate_semi_infinite_or_throw(const Integrand& f, double scale, const QuadratureConfig& cfg,
                                        const char* what) {
    const auto r = integrate_semi_infinite(f, scale, cfg);
    if (!r.converged) {
        throw_quadrature(what, r);
    }
    return r.value;
}

} // namespace igsrelay
