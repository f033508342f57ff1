#include "igsrelay/ergodic.hpp"

#include "igsrelay/errors.hpp"
#include "igsrelay/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace igsrelay {

using specfun::gamma_int;

namespace {

double binomial(int n, int k) {
    return gamma_int(n + 1) / (gamma_int(k + 1) * gamma_int(n - k + 1));
}

void check(const SystemParams& sys, const SignalParams& sig) {
    sys.validate();
    sig.validate(sys);
}

bool coincide(long double x, long double y) {
    return std::abs(x - y) <= kPoleCollisionTol * std::max({1.0L, std::abs(x), std::abs(y)});
}

using LD = long double;

// Taylor coefficients h_0..h_{n-1} in u of
//   weight * sum_i 1/(psi + beta_i) * (e + f u)^{-q},  psi = (u - b)/a,
// i.e. the cofactor of a pole of order n of F in the variable u = a psi + b.
std::vector<LD> cofactor_series(int n, LD a, LD b, const std::vector<LD>& betas, LD weight, LD e, LD f, int q) {
    std::vector<LD> simple(n, 0.0L);
    for (LD beta : betas) {
        // 1/(psi + beta) = a / (u + d) = (a/d) sum (-u/d)^t
        const LD d = a * beta - b;
        LD c = weight * a / d;
        for (int t = 0; t < n; ++t) {
            simple[t] += c;
            c *= -1.0L / d;
        }
    }
    std::vector<LD> other(n, 0.0L);
    // (e + f u)^{-q} = e^{-q} sum_t (-1)^t C(q+t-1, t) (f u / e)^t
    LD c = std::pow(e, -q);
    for (int t = 0; t < n; ++t) {
        other[t] = c;
        c *= -static_cast<LD>(q + t) / (t + 1) * (f / e);
    }
    std::vector<LD> h(n, 0.0L);
    for (int t = 0; t < n; ++t) {
        for (int u = 0; u <= t; ++u) {
            h[t] += simple[u] * other[t - u];
        }
    }
    return h;
}

// The expansion is computed in long double: near-coincident poles make the
// coefficients large and of alternating sign, and the closed-form integral
// sums them back down to O(1).
struct UbGeometry {
    LD s;      // 1 - C^2 with C clamped
    LD c;      // clamped circularity
    LD a1, b1, a2, b2;
    LD omega;  // exponential rate in psi
};

UbGeometry geometry(const SystemParams& sys, const SignalParams& sig) {
    UbGeometry g{};
    g.c = std::min(sig.c_x, kCircularityEdge);
    g.s = (1.0L - g.c) * (1.0L + g.c);
    const LD th_sr = sys.sr.pi / static_cast<LD>(sys.sr.m);
    const LD th_rd = sys.rd.pi / static_cast<LD>(sys.rd.m);
    g.a1 = sig.p_r / (sys.p_s * th_sr);
    g.b1 = sys.rr.m / static_cast<LD>(sys.rr.pi);
    g.a2 = sys.p_s / (sig.p_r * th_rd * g.s);
    g.b2 = sys.sd.m / static_cast<LD>(sys.sd.pi);
    g.omega = 1.0L / (sys.p_s * th_sr) + 1.0L / (sig.p_r * th_rd * g.s);
    return g;
}

PartialFractionExpansion expand(const UbGeometry& g, int p, int q, const ErgodicIndex& idx) {
    PartialFractionExpansion pf;
    pf.a1 = g.a1;
    pf.b1 = g.b1;
    pf.a2 = g.a2;
    pf.b2 = g.b2;
    pf.context = idx;
    const LD pole1 = g.b1 / g.a1;
    const LD pole2 = g.b2 / g.a2;
    const std::vector<LD> betas{1.0L - g.c, 1.0L + g.c};
    for (LD beta : betas) {
        if (coincide(beta, pole1) || coincide(beta, pole2)) {
            throw DegenerateError("compute_partial_fractions: simple pole at -" +
                                  std::to_string(static_cast<double>(beta)) + " collides with a multiple pole");
        }
    }
    if (coincide(pole1, pole2)) {
        throw DegenerateError("compute_partial_fractions: the two multiple poles coincide at -" +
                              std::to_string(static_cast<double>(pole1)));
    }

    auto big_g = [&](LD psi) { return std::pow(g.a1 * psi + g.b1, p) * std::pow(g.a2 * psi + g.b2, q); };
    // At C = 0, (psi + 1) cancels one factor of (psi + 1)^2: a single simple pole.
    const bool merged = g.c == 0.0L;
    const std::vector<LD> roots = merged ? std::vector<LD>{1.0L} : betas;
    const LD weight = merged ? 1.0L : 0.5L;
    for (LD beta : roots) {
        pf.simple_terms.push_back({beta, weight / big_g(-beta)});
    }

    // Pole of order p at u = a1 psi + b1 = 0.
    {
        const auto h = cofactor_series(p, g.a1, g.b1, roots, weight, g.b2 - g.a2 * pole1, g.a2 / g.a1, q);
        for (int j = 1; j <= p; ++j) {
            pf.sr_pole_terms.push_back(h[p - j]);
        }
    }
    {
        const auto h = cofactor_series(q, g.a2, g.b2, roots, weight, g.b1 - g.a1 * pole2, g.a1 / g.a2, p);
        for (int l = 1; l <= q; ++l) {
            pf.sd_pole_terms.push_back(h[q - l]);
        }
    }
    return pf;
}

// 1 - p_e2e_lb as a function of r, for the defining-integral check.
double lb_success(const SystemParams& sys, const SignalParams& sig, double r) {
    return 1.0 - p_e2e_lb(sys, sig, RateTarget(r)).value;
}

} // namespace

long double PartialFractionExpansion::evaluate(long double psi) const {
    long double v = 0.0L;
    for (const auto& t : simple_terms) {
        v += t.coefficient / (psi + t.root);
    }
    const long double u1 = a1 * psi + b1;
    for (std::size_t j = 0; j < sr_pole_terms.size(); ++j) {
        v += sr_pole_terms[j] / std::pow(u1, static_cast<int>(j + 1));
    }
    const long double u2 = a2 * psi + b2;
    for (std::size_t l = 0; l < sd_pole_terms.size(); ++l) {
        v += sd_pole_terms[l] / std::pow(u2, static_cast<int>(l + 1));
    }
    return v;
}

long double PartialFractionExpansion::rational(long double psi) const {
    const int p = static_cast<int>(sr_pole_terms.size());
    const int q = static_cast<int>(sd_pole_terms.size());
    const long double den = std::pow(a1 * psi + b1, p) * std::pow(a2 * psi + b2, q);
    if (simple_terms.size() == 1) {
        return 1.0L / ((psi + simple_terms[0].root) * den);
    }
    return (psi + 1.0L) / ((psi + simple_terms[0].root) * (psi + simple_terms[1].root) * den);
}

PartialFractionExpansion compute_partial_fractions(const SystemParams& sys, const SignalParams& sig,
                                                   const ErgodicIndex& idx) {
    check(sys, sig);
    if (idx.m < 0 || idx.m >= sys.sr.m || idx.mp < 0 || idx.mp >= sys.rd.m || idx.k < 0 || idx.k > idx.m ||
        idx.kp < 0 || idx.kp > idx.mp) {
        throw DomainError("compute_partial_fractions: index tuple outside the shape bounds");
    }
    return expand(geometry(sys, sig), idx.k + sys.rr.m, idx.kp + sys.sd.m, idx);
}

double ergodic_rate_cap(const SystemParams& sys, const SignalParams& sig) {
    check(sys, sig);
    double r = 20.0;
    while (lb_success(sys, sig, r) >= 1e-12) {
        r *= 2.0;
        if (r > 1e4) {
            throw NumericalError("ergodic_rate_cap: success probability does not decay");
        }
    }
    return r;
}

EvalResult r_e2e_exact(const SystemParams& sys, const SignalParams& sig, const QuadratureConfig& quad) {
    check(sys, sig);
    quad.validate();
    const double cap = ergodic_rate_cap(sys, sig);
    const double v = integrate_or_throw(
        [&](double r) { return 1.0 - p_e2e_exact(sys, sig, RateTarget(r), quad).value; }, 0.0, cap, quad,
        "r_e2e_exact");
    return EvalResult::exact(v);
}

double r_e2e_ub_by_quadrature(const SystemParams& sys, const SignalParams& sig, const QuadratureConfig& quad) {
    check(sys, sig);
    quad.validate();
    const double cap = ergodic_rate_cap(sys, sig);
    return integrate_or_throw([&](double r) { return lb_success(sys, sig, r); }, 0.0, cap, quad,
                              "r_e2e_ub_by_quadrature");
}

EvalResult r_e2e_ub(const SystemParams& sys, const SignalParams& sig) {
    check(sys, sig);
    const UbGeometry g = geometry(sys, sig);
    const int m_sr = sys.sr.m;
    const int m_rd = sys.rd.m;
    const int m_rr = sys.rr.m;
    const int m_sd = sys.sd.m;
    const LD th_sr = sys.sr.pi / static_cast<LD>(m_sr);
    const LD th_rd = sys.rd.pi / static_cast<LD>(m_rd);
    const LD th_rr = sys.rr.pi / static_cast<LD>(m_rr);
    const LD th_sd = sys.sd.pi / static_cast<LD>(m_sd);
    const LD z1 = g.omega * g.b1 / g.a1;
    const LD z2 = g.omega * g.b2 / g.a2;

    // U(j, j - n, z) depends only on (j, n) for a fixed z; memoize.
    std::map<std::pair<int, int>, LD> u1_cache;
    std::map<std::pair<int, int>, LD> u2_cache;
    auto cached_u = [](std::map<std::pair<int, int>, LD>& cache, int j, int n, LD z) {
        auto [it, inserted] = cache.try_emplace({j, n}, 0.0L);
        if (inserted) {
            it->second = specfun::tricomi_u_ext(j, j - n, z);
        }
        return it->second;
    };

    LD total = 0.0L;
    LD magnitude = 0.0L;  // sum of |terms|, for the rounding error bound
    for (int m = 0; m < m_sr; ++m) {
        for (int mp = 0; mp < m_rd; ++mp) {
            const int n = m + mp;
            const LD nfact = gamma_int(n + 1);
            for (int k = 0; k <= m; ++k) {
                const LD c1 = binomial(m, k) * gamma_int(k + m_rr) / gamma_int(m_rr) * std::pow(LD(sig.p_r), k) /
                              (std::pow(th_rr, m_rr) * gamma_int(m + 1) * std::pow(sys.p_s * th_sr, m));
                for (int kp = 0; kp <= mp; ++kp) {
                    const LD c2 = binomial(mp, kp) * gamma_int(kp + m_sd) / gamma_int(m_sd) *
                                  std::pow(LD(sys.p_s), kp) /
                                  (std::pow(th_sd, m_sd) * gamma_int(mp + 1) * std::pow(g.s * sig.p_r * th_rd, mp));
                    const int p = k + m_rr;
                    const int q = kp + m_sd;
                    const auto pf = expand(g, p, q, {m, mp, k, kp});

                    // int_0^inf psi^n e^{-omega psi} F(psi) dpsi, term by term.
                    LD integral = 0.0L;
                    auto add = [&](LD term) {
                        integral += term;
                        magnitude += std::abs(c1 * c2 * term);
                    };
                    for (const auto& [root, coef] : pf.simple_terms) {
                        add(coef * nfact * std::pow(g.omega, -n) * specfun::xi_n_ext(n + 1, root * g.omega));
                    }
                    for (int j = 1; j <= p; ++j) {
                        add(pf.sr_pole_terms[j - 1] * std::pow(g.a1, -j) * nfact * std::pow(g.omega, j - 1 - n) *
                            cached_u(u1_cache, j, n, z1));
                    }
                    for (int l = 1; l <= q; ++l) {
                        add(pf.sd_pole_terms[l - 1] * std::pow(g.a2, -l) * nfact * std::pow(g.omega, l - 1 - n) *
                            cached_u(u2_cache, l, n, z2));
                    }
                    total += c1 * c2 * integral;
                }
            }
        }
    }
    const double v = static_cast<double>(total / std::numbers::ln2_v<LD>);
    if (!std::isfinite(v)) {
        throw NumericalError("r_e2e_ub: non-finite result");
    }
    // Nearly coincident poles that pass the collision test can still cancel
    // beyond long double precision; refuse rather than return noise.
    // Each term carries ~1e-17 relative error (the Tricomi U quadrature tolerance).
    const LD rounding = 1e-17L * magnitude;
    if (rounding > kUbRoundingBudget) {
        throw NumericalError("r_e2e_ub: ill-conditioned partial fractions (rounding bound " +
                             std::to_string(static_cast<double>(rounding)) + ")");
    }
    return EvalResult::upper(v);
}

EvalResult r_e2e_rayleigh_lb(const SystemParams& sys, const SignalParams& sig) {
    check(sys, sig);
    if (!sys.rayleigh()) {
        throw DomainError("r_e2e_rayleigh_lb: requires Rayleigh fading on every link");
    }
    const double c = std::min(sig.c_x, kCircularityEdge);
    const double s = (1.0 - c) * (1.0 + c);
    const double cp = alpha(sys, sig.p_r) * c;
    const double rho = sig.p_r * sys.rd.pi * s / (sys.p_s * sys.sd.pi);
    const double mu = (sig.p_r * sys.rr.pi + 1.0) / (sys.p_s * sys.sr.pi) + 1.0 / (sig.p_r * sys.rd.pi * s);
    const double d1 = rho - (1.0 - cp);
    const double d2 = rho - (1.0 + cp);
    if (std::abs(d1) < kPoleCollisionTol || std::abs(d2) < kPoleCollisionTol) {
        throw DegenerateError("r_e2e_rayleigh_lb: partial fraction denominator vanishes");
    }
    const double k1 = 0.5 / d1;
    const double k2 = 0.5 / d2;
    const double k3 = (1.0 - rho) / (d1 * d2);
    const double v = rho / std::numbers::ln2 *
                     (k1 * specfun::xi_n(1, (1.0 - cp) * mu) + k2 * specfun::xi_n(1, (1.0 + cp) * mu) +
                      k3 * specfun::xi_n(1, rho * mu));
    if (!std::isfinite(v)) {
        throw NumericalError("r_e2e_rayleigh_lb: non-finite result");
    }
    return EvalResult::lower(v);
}

} // namespace igsrelay
