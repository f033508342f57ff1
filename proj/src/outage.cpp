#include "igsrelay/outage.hpp"

#include "igsrelay/errors.hpp"
#include "igsrelay/rates.hpp"
#include "igsrelay/specfun.hpp"

#include <cmath>

namespace igsrelay {

using specfun::gamma_int;

std::string_view to_string(Method m) {
    switch (m) {
    case Method::ExactIntegral: return "exact";
    case Method::LowerBound: return "lb";
    case Method::UpperBound: return "ub";
    case Method::ClosedFormExact: return "closed";
    case Method::MonteCarlo: return "mc";
    }
    return "?";
}

namespace {

double binomial(int n, int k) {
    return gamma_int(n + 1) / (gamma_int(k + 1) * gamma_int(n - k + 1));
}

double gamma_pdf(double x, const LinkStat& link) {
    const double theta = link.theta();
    if (link.m == 1) {
        return std::exp(-x / theta) / theta;
    }
    if (x <= 0.0) {
        return 0.0;
    }
    return std::exp((link.m - 1) * std::log(x) - x / theta - std::lgamma(link.m) - link.m * std::log(theta));
}

void require_rayleigh_sr(const SystemParams& sys, const char* who) {
    if (sys.sr.m != 1 || sys.rr.m != 1) {
        throw DomainError(std::string(who) + ": requires m_sr = m_rr = 1 (Rayleigh first hop)");
    }
}

void require_rayleigh(const SystemParams& sys, const char* who) {
    if (!sys.rayleigh()) {
        throw DomainError(std::string(who) + ": requires all Nakagami shapes equal to 1");
    }
}

void check(const SystemParams& sys, const SignalParams& sig) {
    sys.validate();
    sig.validate(sys);
}

// Finite sum shared by the first hop lower bound and the exact second hop:
//   e^{-w} sum_{m<m_main} sum_{k<=m} C(m,k) Gamma(k+m_int)/Gamma(m_int)
//          (q)^k w^m / (m! (1 + q w)^{k + m_int})
// which is the success probability of a gamma(m_main) link whose threshold
// scales linearly with an independent gamma(m_int) interferer.
//   w: normalized threshold at zero interference; q: P_int * theta_int.
double linear_threshold_success(int m_main, int m_int, double w, double q) {
    const double base = 1.0 + q * w;
    double sum = 0.0;
    for (int m = 0; m < m_main; ++m) {
        const double wm = std::pow(w, m) / gamma_int(m + 1);
        for (int k = 0; k <= m; ++k) {
            sum += binomial(m, k) * gamma_int(k + m_int) / gamma_int(m_int) * std::pow(q, k) * wm /
                   std::pow(base, k + m_int);
        }
    }
    return std::exp(-w) * sum;
}

double hop1_threshold(const SystemParams& sys, const RateTarget& target, double c_x) {
    return psi_r(target, c_x) / (sys.p_s * sys.sr.theta());
}

double hop2_threshold(const SystemParams& sys, double p_r, const RateTarget& target, double c_x) {
    return psi_ratio_limit(target, c_x) / (p_r * sys.rd.theta());
}

} // namespace

EvalResult p_sr_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                      const QuadratureConfig& quad) {
    check(sys, sig);
    quad.validate();
    const int m_sr = sys.sr.m;
    const double theta_sr = sys.sr.theta();
    auto outage_given = [&](double x) {
        return specfun::regularized_lower_gamma_int(m_sr, sr_outage_threshold(sys, sig, target, x) / theta_sr);
    };
    auto success_given = [&](double x) {
        return specfun::regularized_upper_gamma_int(m_sr, sr_outage_threshold(sys, sig, target, x) / theta_sr);
    };
    const double scale = sys.rr.m * sys.rr.theta();
    // Integrate whichever of outage/success is the smaller probability so
    // the result keeps relative accuracy at both ends of [0, 1].
    const double outage = integrate_semi_infinite_or_throw(
        [&](double x) { return gamma_pdf(x, sys.rr) * outage_given(x); }, scale, quad, "p_sr_exact");
    if (outage <= 0.5) {
        return EvalResult::exact(outage);
    }
    const double success = integrate_semi_infinite_or_throw(
        [&](double x) { return gamma_pdf(x, sys.rr) * success_given(x); }, scale, quad, "p_sr_exact");
    return EvalResult::exact(1.0 - success);
}

EvalResult p_sr_lb(const SystemParams& sys, const SignalParams& sig, const RateTarget& target) {
    check(sys, sig);
    const double w = hop1_threshold(sys, target, sig.c_x);
    const double q = sig.p_r * sys.rr.theta();
    return EvalResult::lower(1.0 - linear_threshold_success(sys.sr.m, sys.rr.m, w, q));
}

EvalResult p_sr_rayleigh_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                               const QuadratureConfig& quad) {
    check(sys, sig);
    require_rayleigh_sr(sys, "p_sr_rayleigh_exact");
    quad.validate();
    const double mean_rr = sys.rr.pi;
    const double mean_sr = sys.sr.pi;
    auto integrand = [&](double g) {
        const double exponent = sr_outage_threshold(sys, sig, target, g) / mean_sr;
        return -std::expm1(-exponent) * std::exp(-g / mean_rr) / mean_rr;
    };
    return EvalResult::exact(integrate_semi_infinite_or_throw(integrand, mean_rr, quad, "p_sr_rayleigh_exact"));
}

EvalResult p_sr_rayleigh_ub(const SystemParams& sys, const SignalParams& sig, const RateTarget& target) {
    check(sys, sig);
    require_rayleigh_sr(sys, "p_sr_rayleigh_ub");
    const double a = alpha(sys, sig.p_r);
    const double exponent = (sig.p_r * sys.rr.pi + 1.0) / (sys.p_s * sys.sr.pi) * psi_r(target, a * sig.c_x);
    return EvalResult::upper(-std::expm1(-exponent));
}

namespace {

struct ExponentCoefficients {
    double a, b, c, d, f;
};

ExponentCoefficients exponent_coefficients(const SystemParams& sys, const SignalParams& sig,
                                           const RateTarget& target) {
    const double g = target.gamma();
    const double ps_pi = sys.p_s * sys.sr.pi;
    const double ps_pi2 = ps_pi * ps_pi;
    const double s = (1.0 - sig.c_x) * (1.0 + sig.c_x);
    return {sig.p_r * sig.p_r * (1.0 + g * s) / ps_pi2, 2.0 * (1.0 + g) * sig.p_r / ps_pi2, (1.0 + g) / ps_pi2,
            sig.p_r / ps_pi, 1.0 / ps_pi};
}

} // namespace

double convexity_exponent(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                          double g_rr) {
    check(sys, sig);
    if (!(g_rr >= 0.0)) {
        throw DomainError("convexity_exponent: g_rr must be >= 0");
    }
    const auto k = exponent_coefficients(sys, sig, target);
    return std::sqrt(k.a * g_rr * g_rr + k.b * g_rr + k.c) - (k.d * g_rr + k.f);
}

double convexity_witness(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                         double g_rr) {
    check(sys, sig);
    if (!(g_rr >= 0.0)) {
        throw DomainError("convexity_witness: g_rr must be >= 0");
    }
    const auto k = exponent_coefficients(sys, sig, target);
    // 4AC - B^2 = -4 P_r^2 (1+gamma) gamma C_x^2 / (P_s pi_sr)^4, written
    // without the cancellation of the raw difference.
    const double ps_pi = sys.p_s * sys.sr.pi;
    const double g = target.gamma();
    const double disc = -4.0 * sig.p_r * sig.p_r * (1.0 + g) * g * sig.c_x * sig.c_x / std::pow(ps_pi, 4);
    const double quad_form = k.c + g_rr * (k.b + k.a * g_rr);
    return disc / (4.0 * std::pow(quad_form, 1.5));
}

EvalResult p_rd_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target) {
    check(sys, sig);
    const double v = hop2_threshold(sys, sig.p_r, target, sig.c_x);
    const double q = sys.p_s * sys.sd.theta();
    return EvalResult::closed(1.0 - linear_threshold_success(sys.rd.m, sys.sd.m, v, q));
}

EvalResult p_e2e_exact(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                       const QuadratureConfig& quad) {
    const double p1 = p_sr_exact(sys, sig, target, quad).value;
    const double p2 = p_rd_exact(sys, sig, target).value;
    return EvalResult::exact(p1 + p2 * (1.0 - p1));
}

EvalResult p_e2e_lb(const SystemParams& sys, const SignalParams& sig, const RateTarget& target) {
    check(sys, sig);
    const int m_sr = sys.sr.m;
    const int m_rd = sys.rd.m;
    const int m_rr = sys.rr.m;
    const int m_sd = sys.sd.m;
    const double p_r = sig.p_r;
    const double p_s = sys.p_s;
    const double th_sr = sys.sr.theta();
    const double th_rd = sys.rd.theta();
    const double th_rr = sys.rr.theta();
    const double th_sd = sys.sd.theta();
    const double psi = psi_r(target, sig.c_x);
    // Psi_r(C) / (1 - C^2), finite at C = 1.
    const double ratio = psi_ratio_limit(target, sig.c_x);

    const double mu_sr = p_r * psi / (p_s * th_sr) + 1.0 / th_rr;
    const double mu_rd = p_s * ratio / (p_r * th_rd) + 1.0 / th_sd;
    const double exponent = psi / (p_s * th_sr) + ratio / (p_r * th_rd);
    const double prefactor = std::exp(-exponent) / (gamma_int(m_sd) * gamma_int(m_rr) * std::pow(th_sd, m_sd) *
                                                    std::pow(th_rr, m_rr));
    double sum = 0.0;
    for (int m = 0; m < m_sr; ++m) {
        for (int mp = 0; mp < m_rd; ++mp) {
            for (int k = 0; k <= m; ++k) {
                for (int kp = 0; kp <= mp; ++kp) {
                    const double num = binomial(m, k) * binomial(mp, kp) * std::pow(p_r, k - mp) *
                                       gamma_int(k + m_rr) * gamma_int(kp + m_sd) * std::pow(psi, m) *
                                       std::pow(ratio, mp);
                    const double den = std::pow(p_s, m - kp) * gamma_int(m + 1) * gamma_int(mp + 1) *
                                       std::pow(th_sr, m) * std::pow(th_rd, mp) * std::pow(mu_sr, k + m_rr) *
                                       std::pow(mu_rd, kp + m_sd);
                    sum += num / den;
                }
            }
        }
    }
    return EvalResult::lower(1.0 - prefactor * sum);
}

EvalResult p_e2e_rayleigh_ub(const SystemParams& sys, const SignalParams& sig, const RateTarget& target) {
    check(sys, sig);
    require_rayleigh(sys, "p_e2e_rayleigh_ub");
    const double hop2 = psi_ratio_limit(target, sig.c_x) / (sig.p_r * sys.rd.pi);
    const double hop1 = (sig.p_r * sys.rr.pi + 1.0) / (sys.p_s * sys.sr.pi) *
                        psi_r(target, alpha(sys, sig.p_r) * sig.c_x);
    const double den = sys.p_s * sys.sd.pi * hop2 + 1.0;
    // 1 - e^{-E}/den = ((1 - e^{-E}) + (den - 1)) / den, both terms >= 0.
    return EvalResult::upper((-std::expm1(-(hop1 + hop2)) + (den - 1.0)) / den);
}

double asymptotic_k(const SystemParams& sys, double p_r, const RateTarget& target) {
    sys.validate();
    require_rayleigh(sys, "asymptotic_k");
    if (!(p_r > 0.0)) {
        throw DomainError("asymptotic_k: relay power must be positive");
    }
    const double g = target.gamma();
    const double two_pr_pird = 2.0 * p_r * sys.rd.pi;
    const double exponent = g / two_pr_pird + g / (sys.p_s * sys.sr.pi);
    const double den = two_pr_pird + g * sys.p_s * sys.sd.pi;
    return (two_pr_pird * -std::expm1(-exponent) + g * sys.p_s * sys.sd.pi) / den;
}

double throughput(const RateTarget& target, double p_out) {
    if (!(p_out >= 0.0 && p_out <= 1.0)) {
        throw DomainError("throughput: outage probability must lie in [0, 1]");
    }
    return target.r() * (1.0 - p_out);
}

} // namespace igsrelay
