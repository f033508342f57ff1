#include "doctest.h"

#include "igsrelay/ergodic.hpp"
#include "igsrelay/errors.hpp"
#include "igsrelay/kernels.hpp"
#include "igsrelay/montecarlo.hpp"
#include "igsrelay/outage.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace igsrelay;

namespace {

SystemParams table(int m = 1) {
    auto sys = SystemParams::table_one(m);
    sys.sd.pi = 2.0;
    return sys;
}

McConfig mc(std::int64_t n = 1'000'000, std::uint64_t seed = 7) {
    McConfig c;
    c.n_samples = n;
    c.seed = seed;
    return c;
}

bool within(const McEstimate& e, double ref, double k = 3.0, double slack = 0.0) {
    return std::abs(e.mean - ref) <= k * e.std_error + slack;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("config validation") {
    McConfig c = mc(9'999);
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = mc();
    c.threads = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = mc();
    c.batch = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK_NOTHROW(mc().validate());
}

TEST_CASE("gamma gains: moments and determinism") {
    SystemParams sys = table(1);
    sys.sr = {3, 6.0};
    Rng rng = make_stream(11, 0);
    const int n = 1'000'000;
    double s[4] = {}, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ch = sample_gains(sys, rng);
        s[0] += ch.g_sr;
        s[1] += ch.g_rd;
        s[2] += ch.g_rr;
        s[3] += ch.g_sd;
        s2 += ch.g_sr * ch.g_sr;
    }
    const double pis[4] = {sys.sr.pi, sys.rd.pi, sys.rr.pi, sys.sd.pi};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(s[k] / n / pis[k] - 1.0) < 0.01);
    }
    // Gamma(3, 2): variance 12, Var(s^2) ~ sigma^4 (2 + 6/m) / n.
    const double mean = s[0] / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(var - 12.0) <= 3.0 * 12.0 * std::sqrt(4.0 / n));

    Rng a = make_stream(5, 3), b = make_stream(5, 3), c = make_stream(5, 4);
    bool all_same = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = sample_gains(sys, a), y = sample_gains(sys, b), z = sample_gains(sys, c);
        all_same = all_same && same_bits(x.g_sr, y.g_sr) && same_bits(x.g_sd, y.g_sd);
        any_diff = any_diff || x.g_sr != z.g_sr;
    }
    CHECK(all_same);
    CHECK(any_diff);
}

TEST_CASE("improper symbols: variance and circularity") {
    for (double c : {0.0, 0.5, 0.9, 1.0}) {
        Rng rng = make_stream(3, 1);
        const int n = 1'000'000;
        double p = 0.0, re2 = 0.0, im2 = 0.0, pim = 0.0, var_re_sq = 0.0;
        std::vector<double> xr(n);
        for (int i = 0; i < n; ++i) {
            const auto x = sample_improper_symbol(c, rng);
            const auto sq = x * x;
            p += std::norm(x);
            re2 += sq.real();
            pim += sq.imag();
            im2 += x.imag() * x.imag();
            xr[i] = sq.real();
        }
        const double mean_re = re2 / n;
        for (double v : xr) {
            var_re_sq += (v - mean_re) * (v - mean_re);
        }
        const double sigma = std::sqrt(var_re_sq / n / n) + std::sqrt((1.0 - c * c) / n);
        const double coeff = std::hypot(re2, pim) / p;
        CHECK(std::abs(p / n - 1.0) < 0.01);
        CHECK(std::abs(coeff - c) <= 3.0 * sigma + 1e-12);
        if (c == 1.0) {
            CHECK(im2 == 0.0);
        }
    }
    Rng rng = make_stream(1, 1);
    CHECK_THROWS_AS(sample_improper_symbol(1.5, rng), DomainError);
}

TEST_CASE("kernels: AVX2 matches the scalar reference bit for bit") {
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 unavailable; equivalence not exercised");
        CHECK_THROWS_AS(kernels::resolved(kernels::Path::Avx2), DomainError);
        return;
    }
    CHECK(kernels::resolved(kernels::Path::Auto) == kernels::Path::Avx2);
    Rng rng = make_stream(99, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 1023u, 4096u, 100003u}) {
        std::vector<double> sr(n), rd(n), rr(n), sd(n);
        for (std::size_t i = 0; i < n; ++i) {
            // Mix of scales, exact zeros and values on the decision boundary.
            sr[i] = i % 17 == 0 ? 0.0 : -std::log(u(rng)) * 100.0;
            rd[i] = i % 13 == 0 ? 3.0 : -std::log(u(rng)) * 100.0;
            rr[i] = -std::log(u(rng)) * 10.0;
            sd[i] = i % 11 == 0 ? 0.0 : -std::log(u(rng)) * 2.0;
        }
        const kernels::GainBlock g{sr.data(), rd.data(), rr.data(), sd.data(), n};
        for (double c : {0.0, 0.37, 0.9, 1.0}) {
            for (double r : {0.01, 1.0, 3.0}) {
                const double gamma = std::exp2(2 * r) - 1.0;
                const kernels::FdrParams p{1.0, 0.4, 1.0 - c, 1.0 + c, 1.0 + gamma};
                const auto a = kernels::count_fdr_outage(g, p, kernels::Path::Scalar);
                const auto b = kernels::count_fdr_outage(g, p, kernels::Path::Avx2);
                CHECK(a.sr == b.sr);
                CHECK(a.rd == b.rd);
                CHECK(a.e2e == b.e2e);
                const kernels::HdrParams h{1.0, 1.0, gamma};
                const auto x = kernels::count_hdr_outage(g, h, kernels::Path::Scalar);
                const auto y = kernels::count_hdr_outage(g, h, kernels::Path::Avx2);
                CHECK(x.mhdf == y.mhdf);
                CHECK(x.mrc == y.mrc);
                CHECK(x.mrc <= x.mhdf);
            }
        }
    }
    // Boundary case: hop 2 with g_rd = 3, P_r = 1, no interference and C = 0
    // has (1 + 3)^2 = 16 = 1 + gamma at r = 1: not an outage on either path.
    double one[1] = {1e9}, three[1] = {3.0}, zero[1] = {0.0};
    const kernels::GainBlock edge{one, three, zero, zero, 1};
    const kernels::FdrParams p{1.0, 1.0, 1.0, 1.0, 16.0};
    CHECK(kernels::count_fdr_outage(edge, p, kernels::Path::Scalar).rd == 0);
    CHECK(kernels::count_fdr_outage(edge, p, kernels::Path::Avx2).rd == 0);
}

TEST_CASE("kernel predicates agree with the log-domain rates") {
    const auto sys = table(2);
    Rng rng = make_stream(4, 4);
    const RateTarget t(1.0);
    for (double c : {0.0, 0.6, 1.0}) {
        const SignalParams sig{0.7, c};
        int mismatches = 0;
        for (int i = 0; i < 20000; ++i) {
            const auto ch = sample_gains(sys, rng);
            const kernels::GainBlock g{&ch.g_sr, &ch.g_rd, &ch.g_rr, &ch.g_sd, 1};
            const kernels::FdrParams p{sys.p_s, sig.p_r, 1.0 - c, 1.0 + c, 1.0 + t.gamma()};
            const auto k = kernels::count_fdr_outage(g, p, kernels::Path::Scalar);
            const bool a = rate_sr(sys, sig, ch) < t.r();
            const bool b = rate_rd(sys, sig, ch) < t.r();
            mismatches += (k.sr != a) + (k.rd != b);
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("outage: closed-form anchor and small targets") {
    const auto sys = table(1);
    const auto e = estimate_outage(sys, {1.0, 0.0}, RateTarget(1.0), mc());
    CHECK(within(e, 0.126382));
    CHECK(e.std_error <= 0.5 / std::sqrt(double(e.n)));
    CHECK(e.n == 1'000'000);
    const auto tiny = estimate_outage(sys, {1.0, 0.0}, RateTarget(1e-9), mc(100'000));
    CHECK(tiny.mean < 1e-4);
}

TEST_CASE("outage: agreement with the exact quadrature") {
    {
        const auto sys = table(2);
        const SignalParams sig{1.0, 0.9};
        const double ref = p_e2e_exact(sys, sig, RateTarget(1.0)).value;
        CHECK(within(estimate_outage(sys, sig, RateTarget(1.0), mc()), ref));
    }
    // A small grid; the full 5x5 grid at 1e6 samples lives in the acceptance run.
    int checked = 0;
    for (int m : {1, 2}) {
        for (double p_r : {0.2, 1.0}) {
            for (double c : {0.0, 0.5, 1.0}) {
                const auto sys = table(m);
                const SignalParams sig{p_r, c};
                const double ref = p_e2e_exact(sys, sig, RateTarget(1.0)).value;
                const auto e = estimate_outage(sys, sig, RateTarget(1.0), mc(200'000, 100 + checked));
                INFO("m=" << m << " p_r=" << p_r << " c=" << c << " mc=" << e.mean << " exact=" << ref);
                CHECK(within(e, ref));
                ++checked;
            }
        }
    }
    CHECK(checked == 12);
}

TEST_CASE("outage: hops factorize") {
    for (double c : {0.0, 0.9}) {
        const auto b = estimate_outage_breakdown(table(2), {0.5, c}, RateTarget(1.0), mc(500'000));
        const double joint = 1.0 - (1.0 - b.sr.mean) * (1.0 - b.rd.mean);
        CHECK(std::abs(joint - b.e2e.mean) <= 3.0 * b.e2e.std_error);
        CHECK(b.e2e.mean >= std::max(b.sr.mean, b.rd.mean));
    }
}

TEST_CASE("determinism across threads and kernel paths") {
    const auto sys = table(2);
    const SignalParams sig{0.8, 0.7};
    McConfig a = mc(300'001);
    a.batch = 10'000;
    McConfig b = a;
    b.threads = 3;
    McConfig s = a;
    s.kernel = kernels::Path::Scalar;
    const auto ea = estimate_outage(sys, sig, RateTarget(1.0), a);
    const auto eb = estimate_outage(sys, sig, RateTarget(1.0), b);
    const auto es = estimate_outage(sys, sig, RateTarget(1.0), s);
    CHECK(same_bits(ea.mean, eb.mean));
    CHECK(same_bits(ea.std_error, eb.std_error));
    CHECK(same_bits(ea.mean, es.mean));
    const auto ga = estimate_ergodic(sys, sig, a);
    const auto gb = estimate_ergodic(sys, sig, b);
    CHECK(same_bits(ga.mean, gb.mean));
    CHECK(same_bits(ga.std_error, gb.std_error));
    const auto ha = estimate_hdr_outage(sys, RateTarget(1.0), true, a);
    const auto hb = estimate_hdr_outage(sys, RateTarget(1.0), true, b);
    CHECK(same_bits(ha.mean, hb.mean));
    // Repeat run, same answer.
    CHECK(same_bits(estimate_outage(sys, sig, RateTarget(1.0), a).mean, ea.mean));
    // Another seed, another answer.
    a.seed = 8;
    CHECK(estimate_outage(sys, sig, RateTarget(1.0), a).mean != ea.mean);
}

TEST_CASE("ergodic: closed form at C=0, sandwich, vanishing first hop") {
    const auto sys = table(1);
    const auto e0 = estimate_ergodic(sys, {1.0, 0.0}, mc());
    CHECK(within(e0, r_e2e_ub(sys, {1.0, 0.0}).value));
    for (double c : {0.3, 0.6, 0.9}) {
        const SignalParams sig{1.0, c};
        const auto e = estimate_ergodic(sys, sig, mc(500'000));
        INFO("c=" << c << " mc=" << e.mean);
        CHECK(r_e2e_rayleigh_lb(sys, sig).value <= e.mean + 3.0 * e.std_error);
        CHECK(e.mean - 3.0 * e.std_error <= r_e2e_ub(sys, sig).value);
    }
    auto weak = sys;
    weak.sr.pi = 1e-8;
    CHECK(estimate_ergodic(weak, {1.0, 0.5}, mc(50'000)).mean < 1e-6);
}

TEST_CASE("half-duplex baselines") {
    auto sys = table(1);
    CHECK(estimate_hdr_outage(sys, RateTarget(1e-9), false, mc(100'000)).mean < 1e-4);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        const auto mhdf = estimate_hdr_outage(sys, RateTarget(r), false, mc(200'000));
        const auto mrc = estimate_hdr_outage(sys, RateTarget(r), true, mc(200'000));
        CHECK(mrc.mean <= mhdf.mean);
        // MHDF in closed form: both hops Rayleigh with threshold 4^r - 1.
        const double th = std::exp2(2 * r) - 1.0;
        const double ref = 1.0 - std::exp(-th / (sys.p_s * sys.sr.pi) - th / (sys.p_max * sys.rd.pi));
        CHECK(within(mhdf, ref));
    }
}
