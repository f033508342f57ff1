#include "igsrelay/model.hpp"

#include "igsrelay/errors.hpp"

#include <cmath>
#include <numbers>

namespace igsrelay {

void LinkStat::validate(bool allow_extended_shape) const {
    const int max_m = allow_extended_shape ? 170 : 4;
    if (m < 1 || m > max_m) {
        throw DomainError("LinkStat: Nakagami shape m must be an integer in [1, " +
                          std::to_string(max_m) + "], got " + std::to_string(m));
    }
    if (!(pi > 0.0) || !std::isfinite(pi)) {
        throw DomainError("LinkStat: mean power pi must be positive and finite");
    }
}

void SystemParams::validate() const {
    sr.validate(allow_extended_shape);
    rd.validate(allow_extended_shape);
    rr.validate(allow_extended_shape);
    sd.validate(allow_extended_shape);
    if (!(p_s > 0.0) || !(p_max > 0.0) || !std::isfinite(p_s) || !std::isfinite(p_max)) {
        throw DomainError("SystemParams: p_s and p_max must be positive and finite");
    }
    if (p_s > p_max) {
        throw DomainError("SystemParams: source power p_s exceeds p_max");
    }
}

SystemParams SystemParams::table_one(int m) {
    SystemParams sys;
    sys.sr = {m, 100.0};
    sys.rd = {m, 100.0};
    sys.rr = {1, 10.0};
    sys.sd = {1, std::pow(10.0, 0.3)};
    sys.p_s = 1.0;
    sys.p_max = 1.0;
    return sys;
}

void SignalParams::validate(const SystemParams& sys) const {
    if (!(p_r > 0.0) || p_r > sys.p_max) {
        throw DomainError("SignalParams: relay power must lie in (0, p_max]");
    }
    if (!(c_x >= 0.0 && c_x <= 1.0)) {
        throw DomainError("SignalParams: circularity coefficient must lie in [0, 1]");
    }
}

RateTarget::RateTarget(double r) : r_(r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("RateTarget: target rate must be positive and finite");
    }
    gamma_ = std::expm1(2.0 * r * std::numbers::ln2);
    eta_ = std::expm1(r * std::numbers::ln2);
}

double psi_r(const RateTarget& target, double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("psi_r: argument must lie in [0, 1]");
    }
    // Rationalized form: no cancellation as the radicand approaches 1.
    const double u = target.gamma() * (1.0 - x) * (1.0 + x);
    return u / (std::sqrt(1.0 + u) + 1.0);
}

double psi_ratio_limit(const RateTarget& target, double c_x) {
    if (!(c_x >= 0.0 && c_x <= 1.0)) {
        throw DomainError("psi_ratio_limit: circularity must lie in [0, 1]");
    }
    const double g = target.gamma();
    if (c_x >= kCircularityEdge) {
        return 0.5 * g;
    }
    return g / (std::sqrt(1.0 + g * (1.0 - c_x) * (1.0 + c_x)) + 1.0);
}

double alpha(const SystemParams& sys, double p_r) {
    if (!(p_r >= 0.0)) {
        throw DomainError("alpha: relay power must be nonnegative");
    }
    const double q = p_r * sys.rr.pi;
    return q / (q + 1.0);
}

} // namespace igsrelay
