#pragma once

#include "igsrelay/model.hpp"

namespace igsrelay {

/// Instantaneous link power gains g_ij = |h_ij|^2 for one fading block.
struct ChannelRealization {
    double g_sr = 0.0;
    double g_rd = 0.0;
    double g_rr = 0.0;
    double g_sd = 0.0;
};

/// Rate of a link whose output y and interference-plus-noise z are improper:
/// 0.5 log2((sigma_y^4 - |pseudo_y|^2) / (sigma_z^4 - |pseudo_z|^2)).
/// Arguments are the fourth-power variances and squared pseudo-variance
/// magnitudes. Throws DegenerateError if the noise is maximally improper.
double single_link_improper_rate(double sigma4_y, double pseudo2_y, double sigma4_z, double pseudo2_z);

/// First hop rate with the relay's own improper signal as interference.
double rate_sr(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch);

/// Second hop rate with the source's proper signal as interference.
double rate_rd(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch);

/// Decode-and-forward end-to-end rate min(R_sr, R_rd).
double e2e_rate(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch);

/// Positive root in g_sr of the first hop outage quadratic: R_sr < r iff g_sr < root.
double sr_outage_threshold(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                           double g_rr);

} // namespace igsrelay
