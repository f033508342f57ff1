#include "doctest.h"
#include "oracles.hpp"

#include "igsrelay/errors.hpp"
#include "igsrelay/outage.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <random>

using namespace igsrelay;

namespace {

// Default system with pi_sd = 2 (the rounded 3 dB used by the reference values).
SystemParams table(int m_sr = 1, int m_rd = 1) {
    auto sys = SystemParams::table_one(1);
    sys.sr.m = m_sr;
    sys.rd.m = m_rd;
    sys.sd.pi = 2.0;
    return sys;
}

// Closed forms for the proper-signaling Rayleigh case, written out directly.
double eq15_sr(const SystemParams& s, double p_r, double eta) {
    const double a = s.p_s * s.sr.pi;
    return 1.0 - a * std::exp(-eta / a) / (a + p_r * s.rr.pi * eta);
}
double eq18_rd(const SystemParams& s, double p_r, double eta) {
    const double b = p_r * s.rd.pi;
    return 1.0 - b * std::exp(-eta / b) / (b + s.p_s * s.sd.pi * eta);
}
double eq22_e2e(const SystemParams& s, double p_r, double eta) {
    const double a = s.p_s * s.sr.pi;
    const double b = p_r * s.rd.pi;
    return 1.0 - a * b * std::exp(-eta * (1.0 / a + 1.0 / b)) /
                     ((a + p_r * s.rr.pi * eta) * (b + s.p_s * s.sd.pi * eta));
}

// Reference exact first hop outage with Boost quadrature and Boost gamma_p.
double ref_p_sr(const SystemParams& s, const SignalParams& sig, const RateTarget& t) {
    const double th_rr = s.rr.theta();
    const double th_sr = s.sr.theta();
    return oracle::half_line([&](double x) {
        const double w = sig.p_r * x;
        const double y = w * sig.c_x / (w + 1.0);
        const double psi = std::sqrt(1.0 + t.gamma() * (1.0 - y * y)) - 1.0;
        const double thr = (w + 1.0) * psi / (s.p_s * th_sr);
        const double pdf = boost::math::gamma_p_derivative(static_cast<double>(s.rr.m), x / th_rr) / th_rr;
        return boost::math::gamma_p(static_cast<double>(s.sr.m), thr) * pdf;
    });
}

// Reference exact second hop outage by conditioning on g_sd.
double ref_p_rd(const SystemParams& s, const SignalParams& sig, const RateTarget& t) {
    const double th_sd = s.sd.theta();
    const double th_rd = s.rd.theta();
    const double cs = sig.c_x;
    const double psi = std::sqrt(1.0 + t.gamma() * (1.0 - cs * cs)) - 1.0;
    return oracle::half_line([&](double y) {
        const double thr = (s.p_s * y + 1.0) * psi / (sig.p_r * (1.0 - cs * cs)) / th_rd;
        const double pdf = boost::math::gamma_p_derivative(static_cast<double>(s.sd.m), y / th_sd) / th_sd;
        return boost::math::gamma_p(static_cast<double>(s.rd.m), thr) * pdf;
    });
}

} // namespace

TEST_CASE("first hop exact outage: proper Rayleigh reduction and limits") {
    const auto sys = table();
    const RateTarget t(1.0);
    for (double p_r : {0.05, 0.3, 1.0}) {
        CHECK(std::abs(p_sr_exact(sys, {p_r, 0.0}, t).value - eq15_sr(sys, p_r, t.eta())) < 1e-8);
    }
    // Default-system value of the first hop at C_x = 0.
    CHECK(eq15_sr(sys, 1.0, 1.0) == doctest::Approx(0.0999546965916654).epsilon(1e-12));
    // Vanishing relay power leaves a plain Rayleigh link.
    CHECK(std::abs(p_sr_exact(sys, {1e-9, 0.9}, t).value - (1.0 - std::exp(-0.01))) < 1e-9);
    CHECK(p_sr_exact(sys, {1.0, 0.9}, t).method == Method::ExactIntegral);
}

TEST_CASE("first hop exact outage matches a reference integral across shapes") {
    const RateTarget t(1.0);
    for (int m_sr : {1, 2, 3}) {
        for (int m_rr : {1, 2}) {
            auto sys = table(m_sr, 1);
            sys.rr.m = m_rr;
            for (double c : {0.0, 0.5, 0.9, 1.0}) {
                const SignalParams sig{0.6, c};
                CAPTURE(m_sr);
                CAPTURE(m_rr);
                CAPTURE(c);
                CHECK(oracle::rel_diff(p_sr_exact(sys, sig, t).value, ref_p_sr(sys, sig, t)) < 1e-8);
            }
        }
    }
}

TEST_CASE("first hop lower bound") {
    const RateTarget t(1.0);
    const auto sys = table();
    CHECK(p_sr_lb(sys, {1.0, 0.0}, t).value == doctest::Approx(eq15_sr(sys, 1.0, 1.0)).epsilon(1e-12));
    CHECK(p_sr_lb(sys, {1.0, 0.0}, t).method == Method::LowerBound);

    // The bound's defining integral: the effective circularity is replaced by C_x.
    auto sys2 = table(2, 1);
    const SignalParams sig{1.0, 0.9};
    const double psi = std::sqrt(1.0 + 3.0 * (1.0 - 0.81)) - 1.0;
    const double ref = 1.0 - oracle::half_line([&](double x) {
        const double thr = (sig.p_r * x + 1.0) * psi / (sys2.p_s * sys2.sr.theta());
        return boost::math::gamma_q(2.0, thr) * std::exp(-x / sys2.rr.theta()) / sys2.rr.theta();
    });
    CHECK(std::abs(p_sr_lb(sys2, sig, t).value - ref) < 1e-9);

    for (int m : {1, 2, 3}) {
        auto s = table(m, m);
        for (double p_r = 0.1; p_r <= 1.0; p_r += 0.3) {
            for (double c = 0.0; c <= 1.0; c += 0.125) {
                const SignalParams sg{p_r, c};
                CHECK(p_sr_lb(s, sg, t).value <= p_sr_exact(s, sg, t).value + 1e-12);
            }
        }
    }
}

TEST_CASE("Rayleigh first hop: exact expectation and Jensen bound") {
    const RateTarget t(1.0);
    const auto sys = table();
    CHECK(std::abs(p_sr_rayleigh_exact(sys, {1.0, 0.0}, t).value - eq15_sr(sys, 1.0, 1.0)) < 1e-10);
    for (double c : {0.2, 0.6, 0.9, 1.0}) {
        const SignalParams sig{0.8, c};
        CHECK(std::abs(p_sr_rayleigh_exact(sys, sig, t).value - p_sr_exact(sys, sig, t).value) < 1e-8);
        CHECK(p_sr_rayleigh_ub(sys, sig, t).value >= p_sr_rayleigh_exact(sys, sig, t).value);
    }
    auto tiny_rsi = sys;
    tiny_rsi.rr.pi = 1e-12;
    CHECK(std::abs(p_sr_rayleigh_exact(tiny_rsi, {1.0, 0.7}, t).value - (1.0 - std::exp(-1.0 / 100.0))) < 1e-10);

    CHECK(p_sr_rayleigh_ub(sys, {1.0, 0.0}, t).value == doctest::Approx(1.0 - std::exp(-0.11)).epsilon(1e-12));
    CHECK(p_sr_rayleigh_ub(sys, {1.0, 0.0}, t).value > eq15_sr(sys, 1.0, 1.0));

    auto huge_rsi = sys;
    huge_rsi.rr.pi = 1e6;
    CHECK(std::abs(p_sr_rayleigh_ub(huge_rsi, {1.0, 1.0}, t).value - (1.0 - std::exp(-0.03))) < 1e-6);
    // Jensen gap closes as the RSI term vanishes.
    CHECK(std::abs(p_sr_rayleigh_ub(sys, {1e-9, 0.8}, t).value - p_sr_rayleigh_exact(sys, {1e-9, 0.8}, t).value) <
          1e-9);

    CHECK_THROWS_AS(p_sr_rayleigh_ub(table(2, 1), {1.0, 0.5}, t), DomainError);
    CHECK_THROWS_AS(p_sr_rayleigh_exact(table(2, 1), {1.0, 0.5}, t), DomainError);
}

TEST_CASE("convexity witness of the first hop exponent") {
    const RateTarget t(1.0);
    const auto sys = table();
    CHECK(convexity_witness(sys, {1.0, 1.0}, t, 0.5) < 0.0);
    CHECK(convexity_witness(sys, {1.0, 0.0}, t, 0.5) == 0.0);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        auto s = sys;
        s.sr.pi = 1.0 + 200.0 * u(rng);
        const RateTarget tr(0.2 + 2.5 * u(rng));
        const SignalParams sig{0.05 + 0.95 * u(rng), u(rng)};
        const double g = 0.1 + 20.0 * u(rng);
        const double h = 1e-3 * (1.0 + g);
        const double fd = (convexity_exponent(s, sig, tr, g + h) - 2.0 * convexity_exponent(s, sig, tr, g) +
                           convexity_exponent(s, sig, tr, g - h)) /
                          (h * h);
        const double an = convexity_witness(s, sig, tr, g);
        CHECK(an <= 0.0);
        // Second differences lose ~half the digits; compare at the noise floor.
        CHECK(std::abs(fd - an) <= 1e-6 * std::abs(an) + 1e-9 * std::abs(convexity_exponent(s, sig, tr, g)) / (h * h));
        // The exponent really is the first hop threshold over pi_sr.
        const double w = sig.p_r * g;
        const double thr = (w + 1.0) / (s.p_s * s.sr.pi) * psi_r(tr, w * sig.c_x / (w + 1.0));
        CHECK(convexity_exponent(s, sig, tr, g) == doctest::Approx(thr).epsilon(1e-9));
    }
}

TEST_CASE("second hop exact outage") {
    const RateTarget t(1.0);
    const auto sys = table();
    CHECK(p_rd_exact(sys, {1.0, 0.0}, t).value == doctest::Approx(0.0293629080890509).epsilon(1e-12));
    CHECK(p_rd_exact(sys, {1.0, 0.0}, t).value == doctest::Approx(eq18_rd(sys, 1.0, 1.0)).epsilon(1e-13));
    CHECK(p_rd_exact(sys, {1.0, 1.0}, t).value == doctest::Approx(0.0435806411620751).epsilon(1e-12));
    // Corollary form at general C_x.
    for (double c : {0.1, 0.5, 0.95}) {
        const double v = psi_r(t, c) / (1.0 * 100.0 * (1 - c * c));
        const double ref = 1.0 - std::exp(-v) / (1.0 * 2.0 * v + 1.0);
        CHECK(p_rd_exact(sys, {1.0, c}, t).value == doctest::Approx(ref).epsilon(1e-12));
    }
    for (int m_rd : {2, 3, 4}) {
        for (int m_sd : {1, 2}) {
            auto s = table(1, m_rd);
            s.sd.m = m_sd;
            for (double c : {0.0, 0.5, 0.9}) {
                const SignalParams sig{0.4, c};
                CHECK(oracle::rel_diff(p_rd_exact(s, sig, t).value, ref_p_rd(s, sig, t)) < 1e-8);
            }
        }
    }
}

TEST_CASE("end-to-end exact and product rule") {
    const RateTarget t(1.0);
    const auto sys = table();
    const double p1 = p_sr_exact(sys, {1.0, 0.0}, t).value;
    const double p2 = p_rd_exact(sys, {1.0, 0.0}, t).value;
    CHECK(p_e2e_exact(sys, {1.0, 0.0}, t).value == doctest::Approx(1.0 - (1.0 - p1) * (1.0 - p2)).epsilon(1e-14));
    CHECK(std::abs(p_e2e_exact(sys, {1.0, 0.0}, t).value - eq22_e2e(sys, 1.0, 1.0)) < 1e-9);
    CHECK(1.0 - 0.9 * (1.0 - 0.02936) == doctest::Approx(0.126424).epsilon(1e-9));
}

TEST_CASE("end-to-end lower bound") {
    const RateTarget t(1.0);
    const auto sys = table();
    const double lb = p_e2e_lb(sys, {1.0, 0.0}, t).value;
    CHECK(std::abs(lb - eq22_e2e(sys, 1.0, 1.0)) < 1e-12);
    CHECK(std::abs(lb - 0.126382644111626) < 1e-12);

    for (int m : {1, 2, 3}) {
        for (int m_other : {1, 2}) {
            auto s = table(m, m);
            s.rr.m = m_other;
            s.sd.m = m_other;
            for (double c : {0.0, 0.3, 0.9, 1.0}) {
                for (double p_r : {0.2, 1.0}) {
                    const SignalParams sig{p_r, c};
                    const double composed =
                        1.0 - (1.0 - p_sr_lb(s, sig, t).value) * (1.0 - p_rd_exact(s, sig, t).value);
                    CHECK(std::abs(p_e2e_lb(s, sig, t).value - composed) < 1e-10);
                    CHECK(p_e2e_lb(s, sig, t).value <= p_e2e_exact(s, sig, t).value + 1e-12);
                }
            }
        }
    }
    auto s22 = table(2, 2);
    const SignalParams sig{1.0, 0.9};
    const double composed = 1.0 - (1.0 - p_sr_lb(s22, sig, t).value) * (1.0 - p_rd_exact(s22, sig, t).value);
    CHECK(std::abs(p_e2e_lb(s22, sig, t).value - composed) < 1e-10);
}

TEST_CASE("Rayleigh end-to-end upper bound and asymptote") {
    const RateTarget t(1.0);
    const auto sys = table();
    CHECK(p_e2e_rayleigh_ub(sys, {1.0, 0.0}, t).value >= eq22_e2e(sys, 1.0, 1.0));

    // Maximally improper: the closed form with the gamma/(2 P_r pi_rd) limit.
    for (double p_r : {0.1, 0.5, 1.0}) {
        const double a = alpha(sys, p_r);
        const double b2 = 2.0 * p_r * sys.rd.pi;
        const double expo = t.gamma() / b2 + (p_r * sys.rr.pi + 1.0) / (sys.p_s * sys.sr.pi) * psi_r(t, a);
        const double cor = 1.0 - b2 * std::exp(-expo) / (b2 + t.gamma() * sys.p_s * sys.sd.pi);
        CHECK(p_e2e_rayleigh_ub(sys, {p_r, 1.0}, t).value == doctest::Approx(cor).epsilon(1e-12));
        // Continuity into the boundary.
        CHECK(std::abs(p_e2e_rayleigh_ub(sys, {p_r, 1.0 - 1e-8}, t).value - cor) < 1e-6);
    }

    const double k = asymptotic_k(sys, 1.0, t);
    CHECK(k == doctest::Approx(0.0718471050164079).epsilon(1e-12));
    auto huge = sys;
    huge.rr.pi = 1e6;
    CHECK(std::abs(p_e2e_rayleigh_ub(huge, {1.0, 1.0}, t).value - k) <= 1e-3);
    CHECK(asymptotic_k(sys, 1.0, RateTarget(1e-9)) < 1e-7);
    CHECK_THROWS_AS(p_e2e_rayleigh_ub(table(2, 1), {1.0, 0.5}, t), DomainError);
}

TEST_CASE("outage ordering on a dense Rayleigh grid and probabilities stay in [0, 1]") {
    const RateTarget t(1.0);
    const auto sys = table();
    for (int i = 1; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            const SignalParams sig{i / 10.0, j / 10.0};
            const double lb = p_e2e_lb(sys, sig, t).value;
            const double ex = p_e2e_exact(sys, sig, t).value;
            const double ub = p_e2e_rayleigh_ub(sys, sig, t).value;
            CHECK(ex - lb >= -1e-9);
            CHECK(ub - ex >= -1e-9);
            for (double p : {lb, ex, ub}) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
        }
    }
    // Extreme corners.
    for (double r : {1e-6, 0.01, 6.0, 12.0}) {
        const RateTarget tr(r);
        for (double c : {0.0, 0.5, 1.0}) {
            const SignalParams sig{1.0, c};
            for (double p : {p_e2e_lb(sys, sig, tr).value, p_e2e_exact(sys, sig, tr).value,
                             p_e2e_rayleigh_ub(sys, sig, tr).value}) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
        }
    }
}

TEST_CASE("throughput") {
    const RateTarget t(1.0);
    CHECK(throughput(t, 0.0) == 1.0);
    CHECK(throughput(t, 1.0) == 0.0);
    CHECK(throughput(t, 0.126382) == doctest::Approx(0.873618).epsilon(1e-12));
    CHECK_THROWS_AS(throughput(t, 1.5), DomainError);
}
