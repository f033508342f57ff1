#pragma once
// Outage indicator counting over structure-of-arrays gain blocks. Scalar
// reference kernels plus AVX2 variants picked at runtime; both evaluate the
// same expression trees without FMA, so counts are bit-identical.

#include <cstddef>
#include <cstdint>

namespace igsrelay::kernels {

/// Borrowed views of n gains per link.
struct GainBlock {
    const double* g_sr;
    const double* g_rd;
    const double* g_rr;
    const double* g_sd;
    std::size_t n;
};

/// Full-duplex link parameters, pre-folded for the comparisons
///   hop 1 outage:  (lo + D)(hi + D) < (1 + gamma) lo hi,
///                  D = P_s g_sr, lo/hi = P_r g_rr (1 -/+ C) + 1
///   hop 2 outage:  (N + X(1 - C))(N + X(1 + C)) < (1 + gamma) N^2,
///                  X = P_r g_rd, N = P_s g_sd + 1
struct FdrParams {
    double p_s;
    double p_r;
    double one_minus_c;
    double one_plus_c;
    double one_plus_gamma;
};

struct FdrCounts {
    std::uint64_t sr = 0;   ///< first hop in outage
    std::uint64_t rd = 0;   ///< second hop in outage
    std::uint64_t e2e = 0;  ///< either hop in outage
};

/// Half-duplex baselines: each hop needs SNR >= threshold (= 4^r - 1 for a
/// half slot at rate 2r). MRC adds the direct link to the second stage.
struct HdrParams {
    double p_s;
    double p_r;
    double threshold;
};

struct HdrCounts {
    std::uint64_t mhdf = 0;
    std::uint64_t mrc = 0;
};

enum class Path { Auto, Scalar, Avx2 };

bool avx2_available();
/// The path Auto resolves to on this machine.
Path resolved(Path p);

FdrCounts count_fdr_outage(const GainBlock& g, const FdrParams& p, Path path = Path::Auto);
HdrCounts count_hdr_outage(const GainBlock& g, const HdrParams& p, Path path = Path::Auto);

namespace detail {
FdrCounts count_fdr_outage_scalar(const GainBlock& g, const FdrParams& p);
FdrCounts count_fdr_outage_avx2(const GainBlock& g, const FdrParams& p);
HdrCounts count_hdr_outage_scalar(const GainBlock& g, const HdrParams& p);
HdrCounts count_hdr_outage_avx2(const GainBlock& g, const HdrParams& p);
} // namespace detail

} // namespace igsrelay::kernels
