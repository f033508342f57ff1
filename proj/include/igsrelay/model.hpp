#pragma once

// System, signal and target-rate parameters. All powers are linear and
// normalized to unit noise variance at relay and destination.

namespace igsrelay {

/// Statistics of one Nakagami-m fading link: power gain ~ Gamma(m, pi/m).
struct LinkStat {
    int m = 1;
    double pi = 1.0;

    double theta() const { return pi / m; }

    /// Throws DomainError unless pi > 0 and m in {1,2,3,4}; with
    /// `allow_extended_shape`, any integer m in [1, 170] is accepted.
    void validate(bool allow_extended_shape = false) const;
};

struct SystemParams {
    LinkStat sr;  ///< source -> relay
    LinkStat rd;  ///< relay -> destination
    LinkStat rr;  ///< residual self-interference loop at the relay
    LinkStat sd;  ///< source -> destination (interference at the destination)
    double p_s = 1.0;
    double p_max = 1.0;
    bool allow_extended_shape = false;

    /// Throws DomainError on any violated invariant (positive powers, p_s <= p_max,
    /// valid links).
    void validate() const;

    bool rayleigh() const { return sr.m == 1 && rd.m == 1 && rr.m == 1 && sd.m == 1; }

    /// Default simulation scenario: pi_sr = pi_rd = 20 dB, pi_rr = 10 dB,
    /// pi_sd = 3 dB, P_s = P_max = 1, m_sr = m_rd = m, m_rr = m_sd = 1.
    static SystemParams table_one(int m = 1);
};

/// Relay transmit design point.
struct SignalParams {
    double p_r = 1.0;
    double c_x = 0.0;  ///< circularity coefficient |pseudo-variance| / variance

    /// Throws DomainError unless 0 < p_r <= sys.p_max and 0 <= c_x <= 1.
    void validate(const SystemParams& sys) const;
};

/// Target rate r (bits/s/Hz) with gamma = 2^{2r} - 1 and eta = 2^r - 1.
class RateTarget {
public:
    explicit RateTarget(double r);

    double r() const { return r_; }
    double gamma() const { return gamma_; }
    double eta() const { return eta_; }

private:
    double r_;
    double gamma_;
    double eta_;
};

/// Circularity values at or above this are treated as maximally improper in
/// every expression with a (1 - c_x^2) denominator.
inline constexpr double kCircularityEdge = 1.0 - 1e-9;

/// Psi_r(x) = sqrt(1 + gamma (1 - x^2)) - 1 for x in [0, 1].
double psi_r(const RateTarget& target, double x);

/// Psi_r(c) / (1 - c^2), continued by its limit gamma/2 at c -> 1.
double psi_ratio_limit(const RateTarget& target, double c_x);

/// alpha = P_r pi_rr / (P_r pi_rr + 1).
double alpha(const SystemParams& sys, double p_r);

} // namespace igsrelay
