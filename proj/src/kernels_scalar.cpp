#include "igsrelay/errors.hpp"
#include "igsrelay/kernels.hpp"

namespace igsrelay::kernels {

namespace detail {

// The per-sample predicates; the AVX2 kernels reuse these for their tails.
inline bool sr_out(const GainBlock& g, const FdrParams& p, std::size_t i) {
    const double d = p.p_s * g.g_sr[i];
    const double w = p.p_r * g.g_rr[i];
    const double lo = w * p.one_minus_c + 1.0;
    const double hi = w * p.one_plus_c + 1.0;
    return (lo + d) * (hi + d) < p.one_plus_gamma * (lo * hi);
}

inline bool rd_out(const GainBlock& g, const FdrParams& p, std::size_t i) {
    const double x = p.p_r * g.g_rd[i];
    const double n = p.p_s * g.g_sd[i] + 1.0;
    return (n + x * p.one_minus_c) * (n + x * p.one_plus_c) < p.one_plus_gamma * (n * n);
}

FdrCounts count_fdr_outage_scalar(const GainBlock& g, const FdrParams& p) {
    FdrCounts c;
    for (std::size_t i = 0; i < g.n; ++i) {
        const bool a = sr_out(g, p, i);
        const bool b = rd_out(g, p, i);
        c.sr += a;
        c.rd += b;
        c.e2e += a || b;
    }
    return c;
}

HdrCounts count_hdr_outage_scalar(const GainBlock& g, const HdrParams& p) {
    HdrCounts c;
    for (std::size_t i = 0; i < g.n; ++i) {
        const bool first = p.p_s * g.g_sr[i] < p.threshold;
        const double relay = p.p_r * g.g_rd[i];
        c.mhdf += first || relay < p.threshold;
        c.mrc += first || relay + p.p_s * g.g_sd[i] < p.threshold;
    }
    return c;
}

} // namespace detail

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Path resolved(Path p) {
    if (p == Path::Auto) {
        return avx2_available() ? Path::Avx2 : Path::Scalar;
    }
    if (p == Path::Avx2 && !avx2_available()) {
        throw DomainError("kernels: AVX2 requested but not supported by this CPU");
    }
    return p;
}

FdrCounts count_fdr_outage(const GainBlock& g, const FdrParams& p, Path path) {
    return resolved(path) == Path::Avx2 ? detail::count_fdr_outage_avx2(g, p) : detail::count_fdr_outage_scalar(g, p);
}

HdrCounts count_hdr_outage(const GainBlock& g, const HdrParams& p, Path path) {
    return resolved(path) == Path::Avx2 ? detail::count_hdr_outage_avx2(g, p) : detail::count_hdr_outage_scalar(g, p);
}

} // namespace igsrelay::kernels
