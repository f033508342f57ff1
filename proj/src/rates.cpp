#include "igsrelay/rates.hpp"

#include "igsrelay/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace igsrelay {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

} // namespace

double single_link_improper_rate(double sigma4_y, double pseudo2_y, double sigma4_z, double pseudo2_z) {
    if (!(pseudo2_y >= 0.0 && sigma4_y >= pseudo2_y) || !(pseudo2_z >= 0.0 && sigma4_z >= pseudo2_z)) {
        throw DomainError("single_link_improper_rate: need sigma^4 >= |pseudo|^2 >= 0");
    }
    const double den = sigma4_z - pseudo2_z;
    if (den <= 0.0) {
        throw DegenerateError("single_link_improper_rate: interference-plus-noise is maximally improper");
    }
    const double num = sigma4_y - pseudo2_y;
    if (num < den) {
        throw DomainError("single_link_improper_rate: observation has less power than its noise");
    }
    return 0.5 * std::log2(num / den);
}

// Ratio of quadratic forms factored as (A - B)(A + B): each factor is
// 1 + positive, so log1p keeps precision when c_x -> 1 and P_r g_rr is large.
double rate_sr(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch) {
    const double desired = sys.p_s * ch.g_sr;
    const double rsi = sig.p_r * ch.g_rr;
    const double lo = rsi * (1.0 - sig.c_x) + 1.0;
    const double hi = rsi * (1.0 + sig.c_x) + 1.0;
    return 0.5 * kInvLn2 * (std::log1p(desired / lo) + std::log1p(desired / hi));
}

double rate_rd(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch) {
    const double desired = sig.p_r * ch.g_rd;
    const double noise = sys.p_s * ch.g_sd + 1.0;
    return 0.5 * kInvLn2 *
           (std::log1p(desired * (1.0 - sig.c_x) / noise) + std::log1p(desired * (1.0 + sig.c_x) / noise));
}

double e2e_rate(const SystemParams& sys, const SignalParams& sig, const ChannelRealization& ch) {
    return std::min(rate_sr(sys, sig, ch), rate_rd(sys, sig, ch));
}

double sr_outage_threshold(const SystemParams& sys, const SignalParams& sig, const RateTarget& target,
                           double g_rr) {
    const double w = sig.p_r * g_rr;
    return (w + 1.0) / sys.p_s * psi_r(target, w * sig.c_x / (w + 1.0));
}

} // namespace igsrelay
