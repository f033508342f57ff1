#include "igsrelay/specfun.hpp"

#include "igsrelay/errors.hpp"
#include "igsrelay/quadrature.hpp"

#include "detail/gauss_kronrod.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace igsrelay::specfun {

namespace {

constexpr int kMaxGammaArg = 170;

const std::array<double, kMaxGammaArg + 1>& factorials() {
    static const auto table = [] {
        std::array<double, kMaxGammaArg + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxGammaArg; ++i) {
            t[i] = t[i - 1] * static_cast<double>(i);
        }
        return t;
    }();
    return table;
}

void check_shape(int a, const char* who) {
    if (a < 1 || a > kMaxGammaArg) {
        throw DomainError(std::string(who) + ": integer shape must lie in [1, 170]");
    }
}

// e^{-x} * sum_{m<a} x^m/m!, the regularized upper gamma for integer a.
double poisson_tail_sum(int a, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < a; ++m) {
        term *= x / m;
        sum += term;
    }
    return std::exp(-x) * sum;
}

// Continued fraction for e^x E_n(x), modified Lentz. Converges for x > 1.
template <class T>
T en_scaled_continued_fraction(int n, T x, T eps, int max_iter) {
    const T tiny = std::numeric_limits<T>::min() * 1e10;
    T b = x + n;
    T c = T(1) / tiny;
    T d = T(1) / b;
    T h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const T an = -static_cast<T>(i) * static_cast<T>(n - 1 + i);
        b += T(2);
        d = T(1) / (an * d + b);
        c = b + an / c;
        const T delta = c * d;
        h *= delta;
        if (std::abs(delta - T(1)) < eps) {
            return h;
        }
    }
    throw NumericalError("exp_integral_en: continued fraction did not converge");
}

template <class T>
T en_series(int n, T x, T eps, int max_iter) {
    const T euler = std::numbers::egamma_v<T>;
    const int nm1 = n - 1;
    T ans = nm1 != 0 ? T(1) / nm1 : -std::log(x) - euler;
    T fact = 1;
    for (int i = 1; i <= max_iter; ++i) {
        fact *= -x / i;
        T del;
        if (i != nm1) {
            del = -fact / (i - nm1);
        } else {
            T psi = -euler;
            for (int ii = 1; ii <= nm1; ++ii) {
                psi += T(1) / ii;
            }
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * eps) {
            return ans;
        }
    }
    throw NumericalError("exp_integral_en: series did not converge");
}

void check_en_args(int n, double x, const char* who) {
    if (n < 1) {
        throw DomainError(std::string(who) + ": order n must be >= 1");
    }
    if (!(x > 0.0)) {
        throw DomainError(std::string(who) + ": argument must be > 0");
    }
}

} // namespace

void SpecFunConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-3)) {
        throw DomainError("SpecFunConfig: rel_tol must lie in (0, 1e-3)");
    }
    if (max_terms < 64) {
        throw DomainError("SpecFunConfig: max_terms must be >= 64");
    }
}

double gamma_int(int a) {
    check_shape(a, "gamma_int");
    return factorials()[a - 1];
}

double upper_incomplete_gamma_int(int a, double x) {
    check_shape(a, "upper_incomplete_gamma_int");
    if (!(x >= 0.0)) {
        throw DomainError("upper_incomplete_gamma_int: x must be >= 0");
    }
    if (x < 700.0) {
        return gamma_int(a) * poisson_tail_sum(a, x);
    }
    return std::exp(log_upper_incomplete_gamma_int(a, x));
}

double log_upper_incomplete_gamma_int(int a, double x) {
    check_shape(a, "log_upper_incomplete_gamma_int");
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("log_upper_incomplete_gamma_int: x must be finite and >= 0");
    }
    const double log_gamma = std::log(factorials()[a - 1]);
    if (x == 0.0) {
        return log_gamma;
    }
    // log-sum-exp over m*log(x) - log(m!), anchored at the largest term.
    const double lx = std::log(x);
    double peak = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < a; ++m) {
        peak = std::max(peak, m * lx - std::log(factorials()[m]));
    }
    double acc = 0.0;
    for (int m = 0; m < a; ++m) {
        acc += std::exp(m * lx - std::log(factorials()[m]) - peak);
    }
    return log_gamma - x + peak + std::log(acc);
}

double regularized_upper_gamma_int(int a, double x) {
    check_shape(a, "regularized_upper_gamma_int");
    if (!(x >= 0.0)) {
        throw DomainError("regularized_upper_gamma_int: x must be >= 0");
    }
    if (x < static_cast<double>(a)) {
        return 1.0 - regularized_lower_gamma_int(a, x);
    }
    if (x < 700.0) {
        return poisson_tail_sum(a, x);
    }
    return std::exp(log_upper_incomplete_gamma_int(a, x) - std::log(factorials()[a - 1]));
}

double regularized_lower_gamma_int(int a, double x) {
    check_shape(a, "regularized_lower_gamma_int");
    if (!(x >= 0.0)) {
        throw DomainError("regularized_lower_gamma_int: x must be >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x >= static_cast<double>(a)) {
        return 1.0 - regularized_upper_gamma_int(a, x);
    }
    // e^{-x} sum_{m>=a} x^m/m!; terms decrease monotonically since x < a.
    double term = std::exp(a * std::log(x) - x - std::log(factorials()[a]));
    double sum = term;
    for (int m = a + 1; m < a + 2000; ++m) {
        term *= x / m;
        sum += term;
        if (term < sum * 1e-17) {
            break;
        }
    }
    return sum;
}

double exp_integral_en(int n, double x, const SpecFunConfig& cfg) {
    check_en_args(n, x, "exp_integral_en");
    cfg.validate();
    if (x > 1.0) {
        return std::exp(-x) * en_scaled_continued_fraction(n, x, std::min(cfg.rel_tol, 1e-14), cfg.max_terms * 4);
    }
    return en_series(n, x, std::min(cfg.rel_tol, 1e-15), cfg.max_terms);
}

double xi_n(int n, double x, const SpecFunConfig& cfg) {
    check_en_args(n, x, "xi_n");
    cfg.validate();
    if (x > kXiFusedThreshold) {
        return en_scaled_continued_fraction(n, x, std::min(cfg.rel_tol, 1e-14), cfg.max_terms * 4);
    }
    return std::exp(x) * exp_integral_en(n, x, cfg);
}

double tricomi_u(double a, double b, double z, const SpecFunConfig& cfg) {
    if (!(a > 0.0)) {
        throw DomainError("tricomi_u: a must be > 0");
    }
    if (!(z > 0.0)) {
        throw DomainError("tricomi_u: z must be > 0");
    }
    cfg.validate();
    const double log_norm = std::lgamma(a);
    auto integrand = [=](double t) {
        if (t <= 0.0) {
            return 0.0;
        }
        return std::exp((a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t) - z * t - log_norm);
    };
    QuadratureConfig q;
    q.rel_tol = std::min(cfg.rel_tol, 1e-4);
    q.abs_tol = 1e-300;
    q.max_subdivisions = std::max(400, cfg.max_terms);
    const double scale = std::max(1.0, a) / (z + 1.0);
    return integrate_semi_infinite_or_throw(integrand, scale, q, "tricomi_u");
}

long double xi_n_ext(int n, long double x) {
    check_en_args(n, static_cast<double>(x), "xi_n_ext");
    constexpr long double eps = 4 * std::numeric_limits<long double>::epsilon();
    if (x > 1.0L) {
        return en_scaled_continued_fraction<long double>(n, x, eps, 100000);
    }
    return std::exp(x) * en_series<long double>(n, x, eps, 2000);
}

long double tricomi_u_ext(int a, int b, long double z) {
    if (a < 1) {
        throw DomainError("tricomi_u_ext: a must be >= 1");
    }
    if (!(z > 0.0L)) {
        throw DomainError("tricomi_u_ext: z must be > 0");
    }
    const long double log_norm = std::lgamma(static_cast<long double>(a));
    const long double scale = std::max(1.0L, static_cast<long double>(a)) / (z + 1.0L);
    // Same integral as tricomi_u, mapped to (0, 1) by t = scale u / (1 - u).
    auto mapped = [&](long double u) -> long double {
        if (u <= 0.0L || u >= 1.0L) {
            return 0.0L;
        }
        const long double om = 1.0L - u;
        const long double t = scale * u / om;
        const long double lv = (a - 1) * std::log(t) + (b - a - 1) * std::log1p(t) - z * t - log_norm;
        return std::exp(lv) * scale / (om * om);
    };
    const auto r = detail::adaptive_gk<long double>(mapped, 0.0L, 1.0L, 1e-17L, 0.0L, 2000);
    if (!r.converged) {
        throw NumericalError("tricomi_u_ext: quadrature did not converge");
    }
    return r.value;
}

} // namespace igsrelay::specfun
