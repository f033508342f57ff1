#pragma once
// Empirical estimates from sampled block-fading realizations. Every batch
// draws from its own generator stream keyed by (seed, batch index) and
// batches are reduced in index order, so results do not depend on threads.

#include <complex>
#include <cstdint>
#include <random>

#include "igsrelay/kernels.hpp"
#include "igsrelay/model.hpp"
#include "igsrelay/rates.hpp"

namespace igsrelay {

struct McConfig {
    std::int64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::int64_t batch = 1 << 16;
    int threads = 1;
    kernels::Path kernel = kernels::Path::Auto;

    /// Throws DomainError unless n_samples >= 1e4, batch >= 1, threads >= 1.
    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< population std / sqrt(n)
    std::int64_t n = 0;
};

using Rng = std::mt19937_64;

/// Independent generator for `stream` under a given seed.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

ChannelRealization sample_gains(const SystemParams& sys, Rng& rng);

/// Unit-variance complex sample with real pseudo-variance c_x.
std::complex<double> sample_improper_symbol(double c_x, Rng& rng);

/// P{min(R_sr, R_rd) < r}.
McEstimate estimate_outage(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                           const McConfig& mc);

struct OutageBreakdown {
    McEstimate sr;
    McEstimate rd;
    McEstimate e2e;
};

/// Hop-level and joint outage from the same realizations.
OutageBreakdown estimate_outage_breakdown(const SystemParams& sys, const SignalParams& sig,
                                          const RateTarget& target, const McConfig& mc);

/// E{min(R_sr, R_rd)}.
McEstimate estimate_ergodic(const SystemParams& sys, const SignalParams& sig, const McConfig& mc);

/// Half-duplex relaying at p_max: each hop carries 2r in its half slot. With
/// `mrc` the destination combines the relay and direct copies.
McEstimate estimate_hdr_outage(const SystemParams& sys, const RateTarget& target, bool mrc, const McConfig& mc);

} // namespace igsrelay
