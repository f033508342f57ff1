// Compiled with -mavx2 (and without FMA); only reached after a runtime check.
#include "igsrelay/kernels.hpp"

#include <immintrin.h>

namespace igsrelay::kernels::detail {

namespace {

// Scalar tails, same expression trees as kernels_scalar.cpp.
bool sr_out(const GainBlock& g, const FdrParams& p, std::size_t i) {
    const double d = p.p_s * g.g_sr[i];
    const double w = p.p_r * g.g_rr[i];
    const double lo = w * p.one_minus_c + 1.0;
    const double hi = w * p.one_plus_c + 1.0;
    return (lo + d) * (hi + d) < p.one_plus_gamma * (lo * hi);
}

bool rd_out(const GainBlock& g, const FdrParams& p, std::size_t i) {
    const double x = p.p_r * g.g_rd[i];
    const double n = p.p_s * g.g_sd[i] + 1.0;
    return (n + x * p.one_minus_c) * (n + x * p.one_plus_c) < p.one_plus_gamma * (n * n);
}

} // namespace

FdrCounts count_fdr_outage_avx2(const GainBlock& g, const FdrParams& p) {
    const __m256d ps = _mm256_set1_pd(p.p_s);
    const __m256d pr = _mm256_set1_pd(p.p_r);
    const __m256d cm = _mm256_set1_pd(p.one_minus_c);
    const __m256d cp = _mm256_set1_pd(p.one_plus_c);
    const __m256d og = _mm256_set1_pd(p.one_plus_gamma);
    const __m256d one = _mm256_set1_pd(1.0);
    FdrCounts c;
    std::size_t i = 0;
    for (; i + 4 <= g.n; i += 4) {
        const __m256d d = _mm256_mul_pd(ps, _mm256_loadu_pd(g.g_sr + i));
        const __m256d w = _mm256_mul_pd(pr, _mm256_loadu_pd(g.g_rr + i));
        const __m256d lo = _mm256_add_pd(_mm256_mul_pd(w, cm), one);
        const __m256d hi = _mm256_add_pd(_mm256_mul_pd(w, cp), one);
        const __m256d lhs1 = _mm256_mul_pd(_mm256_add_pd(lo, d), _mm256_add_pd(hi, d));
        const __m256d rhs1 = _mm256_mul_pd(og, _mm256_mul_pd(lo, hi));
        const __m256d out1 = _mm256_cmp_pd(lhs1, rhs1, _CMP_LT_OQ);

        const __m256d x = _mm256_mul_pd(pr, _mm256_loadu_pd(g.g_rd + i));
        const __m256d n = _mm256_add_pd(_mm256_mul_pd(ps, _mm256_loadu_pd(g.g_sd + i)), one);
        const __m256d lhs2 =
            _mm256_mul_pd(_mm256_add_pd(n, _mm256_mul_pd(x, cm)), _mm256_add_pd(n, _mm256_mul_pd(x, cp)));
        const __m256d rhs2 = _mm256_mul_pd(og, _mm256_mul_pd(n, n));
        const __m256d out2 = _mm256_cmp_pd(lhs2, rhs2, _CMP_LT_OQ);

        const int m1 = _mm256_movemask_pd(out1);
        const int m2 = _mm256_movemask_pd(out2);
        c.sr += __builtin_popcount(m1);
        c.rd += __builtin_popcount(m2);
        c.e2e += __builtin_popcount(m1 | m2);
    }
    for (; i < g.n; ++i) {
        const bool a = sr_out(g, p, i);
        const bool b = rd_out(g, p, i);
        c.sr += a;
        c.rd += b;
        c.e2e += a || b;
    }
    return c;
}

HdrCounts count_hdr_outage_avx2(const GainBlock& g, const HdrParams& p) {
    const __m256d ps = _mm256_set1_pd(p.p_s);
    const __m256d pr = _mm256_set1_pd(p.p_r);
    const __m256d th = _mm256_set1_pd(p.threshold);
    HdrCounts c;
    std::size_t i = 0;
    for (; i + 4 <= g.n; i += 4) {
        const __m256d first = _mm256_cmp_pd(_mm256_mul_pd(ps, _mm256_loadu_pd(g.g_sr + i)), th, _CMP_LT_OQ);
        const __m256d relay = _mm256_mul_pd(pr, _mm256_loadu_pd(g.g_rd + i));
        const __m256d direct = _mm256_mul_pd(ps, _mm256_loadu_pd(g.g_sd + i));
        const __m256d mhdf = _mm256_cmp_pd(relay, th, _CMP_LT_OQ);
        const __m256d mrc = _mm256_cmp_pd(_mm256_add_pd(relay, direct), th, _CMP_LT_OQ);
        const int f = _mm256_movemask_pd(first);
        c.mhdf += __builtin_popcount(f | _mm256_movemask_pd(mhdf));
        c.mrc += __builtin_popcount(f | _mm256_movemask_pd(mrc));
    }
    for (; i < g.n; ++i) {
        const bool first = p.p_s * g.g_sr[i] < p.threshold;
        const double relay = p.p_r * g.g_rd[i];
        c.mhdf += first || relay < p.threshold;
        c.mrc += first || relay + p.p_s * g.g_sd[i] < p.threshold;
    }
    return c;
}

} // namespace igsrelay::kernels::detail
