#include "igsrelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "igsrelay/errors.hpp"

namespace igsrelay {

namespace {

double gamma_draw(const LinkStat& l, Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    double s = 0.0;
    for (int i = 0; i < l.m; ++i) {
        s += e(rng);
    }
    return s * l.theta();
}

struct Gains {
    std::vector<double> sr, rd, rr, sd;

    void fill(const SystemParams& sys, Rng& rng, std::size_t n) {
        sr.resize(n);
        rd.resize(n);
        rr.resize(n);
        sd.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const ChannelRealization ch = sample_gains(sys, rng);
            sr[i] = ch.g_sr;
            rd[i] = ch.g_rd;
            rr[i] = ch.g_rr;
            sd[i] = ch.g_sd;
        }
    }

    kernels::GainBlock block() const { return {sr.data(), rd.data(), rr.data(), sd.data(), sr.size()}; }
};

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(const Moments& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
};

McEstimate finish(const Moments& m, std::int64_t n) {
    const double nd = static_cast<double>(n);
    const double mean = m.sum / nd;
    const double var = std::max(0.0, m.sum_sq / nd - mean * mean);
    return {mean, std::sqrt(var / nd), n};
}

McEstimate from_count(std::uint64_t count, std::int64_t n) {
    const double c = static_cast<double>(count);
    return finish({c, c}, n);
}

// Runs `body(batch_index, batch_size, rng)` for every batch, spreading batches
// over threads by stride. Per-batch results land in their own slot.
template <class Result, class Body>
std::vector<Result> run_batches(const McConfig& mc, Body body) {
    mc.validate();
    const std::int64_t n_batches = (mc.n_samples + mc.batch - 1) / mc.batch;
    std::vector<Result> out(static_cast<std::size_t>(n_batches));
    const int workers = static_cast<int>(std::min<std::int64_t>(mc.threads, n_batches));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        try {
            for (std::int64_t b = w; b < n_batches; b += workers) {
                const std::int64_t size = std::min(mc.batch, mc.n_samples - b * mc.batch);
                Rng rng = make_stream(mc.seed, static_cast<std::uint64_t>(b));
                out[static_cast<std::size_t>(b)] = body(static_cast<std::size_t>(size), rng);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace

void McConfig::validate() const {
    if (n_samples < 10'000) {
        throw DomainError("McConfig: n_samples must be at least 1e4");
    }
    if (batch < 1) {
        throw DomainError("McConfig: batch must be positive");
    }
    if (threads < 1) {
        throw DomainError("McConfig: threads must be positive");
    }
    kernels::resolved(kernel);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

ChannelRealization sample_gains(const SystemParams& sys, Rng& rng) {
    ChannelRealization ch;
    ch.g_sr = gamma_draw(sys.sr, rng);
    ch.g_rd = gamma_draw(sys.rd, rng);
    ch.g_rr = gamma_draw(sys.rr, rng);
    ch.g_sd = gamma_draw(sys.sd, rng);
    return ch;
}

std::complex<double> sample_improper_symbol(double c_x, Rng& rng) {
    if (!(c_x >= 0.0 && c_x <= 1.0)) {
        throw DomainError("sample_improper_symbol: c_x must lie in [0, 1]");
    }
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng) * std::sqrt((1.0 + c_x) / 2.0);
    const double im = n(rng) * std::sqrt((1.0 - c_x) / 2.0);
    return {re, im};
}

OutageBreakdown estimate_outage_breakdown(const SystemParams& sys, const SignalParams& sig,
                                          const RateTarget& target, const McConfig& mc) {
    sys.validate();
    sig.validate(sys);
    const double c = sig.c_x;
    const kernels::FdrParams p{sys.p_s, sig.p_r, 1.0 - c, 1.0 + c, 1.0 + target.gamma()};
    const auto parts = run_batches<kernels::FdrCounts>(mc, [&](std::size_t n, Rng& rng) {
        Gains g;
        g.fill(sys, rng, n);
        return kernels::count_fdr_outage(g.block(), p, mc.kernel);
    });
    kernels::FdrCounts total;
    for (const auto& c : parts) {
        total.sr += c.sr;
        total.rd += c.rd;
        total.e2e += c.e2e;
    }
    return {from_count(total.sr, mc.n_samples), from_count(total.rd, mc.n_samples),
            from_count(total.e2e, mc.n_samples)};
}

McEstimate estimate_outage(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                           const McConfig& mc) {
    return estimate_outage_breakdown(sys, sig, target, mc).e2e;
}

McEstimate estimate_ergodic(const SystemParams& sys, const SignalParams& sig, const McConfig& mc) {
    sys.validate();
    sig.validate(sys);
    const auto parts = run_batches<Moments>(mc, [&](std::size_t n, Rng& rng) {
        Moments m;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = e2e_rate(sys, sig, sample_gains(sys, rng));
            m.sum += r;
            m.sum_sq += r * r;
        }
        return m;
    });
    Moments total;
    for (const auto& m : parts) {
        total.add(m);
    }
    return finish(total, mc.n_samples);
}

McEstimate estimate_hdr_outage(const SystemParams& sys, const RateTarget& target, bool mrc, const McConfig& mc) {
    sys.validate();
    // A half slot at rate 2r needs SNR >= 2^{2r} - 1.
    const kernels::HdrParams p{sys.p_s, sys.p_max, target.gamma()};
    const auto parts = run_batches<kernels::HdrCounts>(mc, [&](std::size_t n, Rng& rng) {
        Gains g;
        g.fill(sys, rng, n);
        return kernels::count_hdr_outage(g.block(), p, mc.kernel);
    });
    std::uint64_t total = 0;
    for (const auto& c : parts) {
        total += mrc ? c.mrc : c.mhdf;
    }
    return from_count(total, mc.n_samples);
}

} // namespace igsrelay
