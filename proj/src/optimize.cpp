#include "igsrelay/optimize.hpp"

#include "igsrelay/ergodic.hpp"
#include "igsrelay/errors.hpp"
#include "igsrelay/outage.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace igsrelay {

namespace {

constexpr double kEdge = 1e-7;  // bracket [eps, 1 - eps] for the circularity search

// i-th of n power grid points (i = 1..n); the last one is p_max exactly.
double power_point(double p_max, int i, int n) {
    return i == n ? p_max : p_max * i / n;
}

void require_rayleigh(const SystemParams& sys, const char* who) {
    sys.validate();
    if (!sys.rayleigh()) {
        throw DomainError(std::string(who) + ": requires Rayleigh fading on every link");
    }
}

double ub(const SystemParams& sys, const RateTarget& t, double p_r, double c_x) {
    return p_e2e_rayleigh_ub(sys, {p_r, c_x}, t).value;
}

double pgs_exact(const SystemParams& sys, const RateTarget& t, double p_r) {
    // The quadruple-sum bound is exact for proper signaling.
    return p_e2e_lb(sys, {p_r, 0.0}, t).value;
}

// S(x) of the circularity derivative; same sign as d(1 - UB)/dC_x for x > 0.
double cx_factor(const SystemParams& sys, const RateTarget& t, double p_r, double x, double* exponent = nullptr,
                 double* denom = nullptr) {
    const double g = t.gamma();
    const double al = alpha(sys, p_r);
    const double a = 1.0 / (p_r * sys.rd.pi);
    const double b = (p_r * sys.rr.pi + 1.0) / (sys.p_s * sys.sr.pi);
    const double c = sys.p_s * sys.sd.pi / (p_r * sys.rd.pi);
    const double psi = psi_r(t, x);
    const double ratio = psi_ratio_limit(t, x);
    const double psi_a = psi_r(t, al * x);
    // h'(x)/x with h = Psi/(1 - x^2); finite at x = 1.
    const double hp_x = ratio * ratio / (psi + 1.0);
    const double den = c * ratio + 1.0;
    if (exponent != nullptr) {
        *exponent = a * ratio + b * psi_a;
    }
    if (denom != nullptr) {
        *denom = den;
    }
    return den * (-a * hp_x + b * g * al * al / (psi_a + 1.0)) - c * hp_x;
}

// S(P_r) of the power derivative; dUB/dP_r has the sign of -S.
double pr_factor(const SystemParams& sys, const RateTarget& t, double x, double c_x, double* exponent = nullptr,
                 double* d_out = nullptr) {
    const double g = t.gamma();
    const double ratio = psi_ratio_limit(t, c_x);
    const double a = ratio / sys.rd.pi;
    const double d = sys.p_s * sys.sd.pi * ratio / sys.rd.pi;
    const double al = alpha(sys, x);
    const double psi_a = psi_r(t, al * c_x);
    const double beta = sys.rr.pi / (sys.p_s * sys.sr.pi) *
                        (psi_a - g * c_x * c_x * al * (1.0 - al) / (psi_a + 1.0));
    if (exponent != nullptr) {
        *exponent = a / x + (x * sys.rr.pi + 1.0) * psi_a / (sys.p_s * sys.sr.pi);
    }
    if (d_out != nullptr) {
        *d_out = d;
    }
    return d * x + (a - beta * x * x) * (x + d);
}

// d log(success)/dP_r of the exact proper-signaling outage.
double pgs_log_success_slope(const SystemParams& sys, const RateTarget& t, double x) {
    const double eta = t.eta();
    const double a = sys.p_s * sys.sr.pi;
    return eta / (x * x * sys.rd.pi) - sys.rr.pi * eta / (a + x * sys.rr.pi * eta) + 1.0 / x -
           sys.rd.pi / (x * sys.rd.pi + sys.p_s * sys.sd.pi * eta);
}

struct PowerProblem {
    std::function<double(double)> objective;
    std::function<double(double)> slope_sign;  // sign of the objective's derivative
};

OptResult power_search(const SystemParams& sys, const PowerProblem& prob, double c_x, const SearchConfig& cfg) {
    OptResult out;
    const double p_max = sys.p_max;
    const double f_max = prob.objective(p_max);
    if (prob.slope_sign(p_max) <= 0.0) {
        // Still descending at the power limit: unimodality puts the minimum there.
        out = {p_max, c_x, f_max, 0, true, {{p_max, c_x, f_max}}};
        return out;
    }
    double hi = p_max;
    double lo = p_max;
    int iters = 0;
    while (prob.slope_sign(lo) > 0.0) {
        hi = lo;
        lo *= 0.5;
        if (++iters > cfg.max_iters || lo < 1e-300) {
            throw NumericalError("bisect_power: could not bracket the stationary point");
        }
    }
    while (hi - lo > cfg.x_tol && iters < cfg.max_iters) {
        const double mid = 0.5 * (lo + hi);
        (prob.slope_sign(mid) > 0.0 ? hi : lo) = mid;
        out.trace.push_back({mid, c_x, prob.objective(mid)});
        ++iters;
    }
    out.iterations = iters;
    out.converged = hi - lo <= cfg.x_tol;
    const double x = 0.5 * (lo + hi);
    const double fx = prob.objective(x);
    if (fx <= f_max) {
        out.p_r_star = x;
        out.objective = fx;
    } else {
        out.p_r_star = p_max;
        out.objective = f_max;
    }
    out.c_x_star = c_x;
    return out;
}

PowerProblem ub_power_problem(const SystemParams& sys, const RateTarget& t, double c_x) {
    return {[&sys, &t, c_x](double x) { return ub(sys, t, x, c_x); },
            [&sys, &t, c_x](double x) { return -pr_factor(sys, t, x, c_x); }};
}

void check_ub_args(const SystemParams& sys, double p_r, double c_x, const char* who) {
    require_rayleigh(sys, who);
    SignalParams{p_r, c_x}.validate(sys);
}

} // namespace

void SearchConfig::validate() const {
    if (!(x_tol >= 1e-10 && x_tol <= 1e-3)) {
        throw DomainError("SearchConfig: x_tol must lie in [1e-10, 1e-3]");
    }
    if (!(f_tol > 0.0)) {
        throw DomainError("SearchConfig: f_tol must be positive");
    }
    if (max_iters < 1) {
        throw DomainError("SearchConfig: max_iters must be >= 1");
    }
    if (grid_n < 101) {
        throw DomainError("SearchConfig: grid_n must be >= 101");
    }
    if (threads < 1) {
        throw DomainError("SearchConfig: threads must be >= 1");
    }
}

std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::OutageExact: return "outage_exact";
    case Metric::OutageLowerBound: return "outage_lb";
    case Metric::OutageUpperBound: return "outage_ub";
    case Metric::ErgodicExact: return "ergodic_exact";
    case Metric::ErgodicUpperBound: return "ergodic_ub";
    case Metric::ErgodicLowerBound: return "ergodic_lb";
    case Metric::Throughput: return "throughput";
    }
    return "?";
}

Metric metric_from_string(std::string_view name) {
    for (Metric m : {Metric::OutageExact, Metric::OutageLowerBound, Metric::OutageUpperBound, Metric::ErgodicExact,
                     Metric::ErgodicUpperBound, Metric::ErgodicLowerBound, Metric::Throughput}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw DomainError("unknown metric '" + std::string(name) + "'");
}

bool is_maximized(Metric m) {
    return m == Metric::ErgodicExact || m == Metric::ErgodicUpperBound || m == Metric::ErgodicLowerBound ||
           m == Metric::Throughput;
}

double evaluate_metric(Metric m, const SystemParams& sys, const RateTarget& target, double p_r, double c_x) {
    const SignalParams sig{p_r, c_x};
    switch (m) {
    case Metric::OutageExact: return p_e2e_exact(sys, sig, target).value;
    case Metric::OutageLowerBound: return p_e2e_lb(sys, sig, target).value;
    case Metric::OutageUpperBound: return p_e2e_rayleigh_ub(sys, sig, target).value;
    case Metric::ErgodicExact: return r_e2e_exact(sys, sig).value;
    case Metric::ErgodicUpperBound:
        try {
            return r_e2e_ub(sys, sig).value;
        } catch (const NumericalError&) {
            // Pole collision or ill-conditioning: same bound, by quadrature.
            return r_e2e_ub_by_quadrature(sys, sig);
        }
    case Metric::ErgodicLowerBound: return r_e2e_rayleigh_lb(sys, sig).value;
    case Metric::Throughput: return throughput(target, p_e2e_exact(sys, sig, target).value);
    }
    throw DomainError("evaluate_metric: unknown metric");
}

double ub_derivative_cx(const SystemParams& sys, const RateTarget& target, double p_r, double c_x) {
    check_ub_args(sys, p_r, c_x, "ub_derivative_cx");
    double exponent = 0.0;
    double den = 0.0;
    const double s = cx_factor(sys, target, p_r, c_x, &exponent, &den);
    return c_x * std::exp(-exponent) * s / (den * den);
}

double ub_derivative_pr(const SystemParams& sys, const RateTarget& target, double p_r, double c_x) {
    check_ub_args(sys, p_r, c_x, "ub_derivative_pr");
    double exponent = 0.0;
    double d = 0.0;
    const double s = pr_factor(sys, target, p_r, c_x, &exponent, &d);
    return -std::exp(-exponent) * s / (p_r * (p_r + d) * (p_r + d));
}

double pgs_derivative_pr(const SystemParams& sys, const RateTarget& target, double p_r) {
    check_ub_args(sys, p_r, 0.0, "pgs_derivative_pr");
    const double success = 1.0 - pgs_exact(sys, target, p_r);
    return -success * pgs_log_success_slope(sys, target, p_r);
}

OptResult bisect_circularity(const SystemParams& sys, const RateTarget& target, double p_r, const SearchConfig& cfg) {
    check_ub_args(sys, p_r, 0.0, "bisect_circularity");
    cfg.validate();
    OptResult out;
    out.p_r_star = p_r;
    std::vector<Iterate> candidates{{p_r, 0.0, ub(sys, target, p_r, 0.0)}, {p_r, 1.0, ub(sys, target, p_r, 1.0)}};
    out.converged = true;

    double lo = kEdge;
    double hi = 1.0 - kEdge;
    // d(1 - UB)/dC_x > 0 means the bound still decreases.
    if (cx_factor(sys, target, p_r, lo) > 0.0 && cx_factor(sys, target, p_r, hi) < 0.0) {
        int iters = 0;
        while (hi - lo > cfg.x_tol && iters < cfg.max_iters) {
            const double mid = 0.5 * (lo + hi);
            (cx_factor(sys, target, p_r, mid) > 0.0 ? lo : hi) = mid;
            out.trace.push_back({p_r, mid, ub(sys, target, p_r, mid)});
            ++iters;
        }
        out.iterations = iters;
        out.converged = hi - lo <= cfg.x_tol;
        const double x = 0.5 * (lo + hi);
        candidates.push_back({p_r, x, ub(sys, target, p_r, x)});
    }
    // Best candidate; ties go to the smaller circularity.
    std::sort(candidates.begin(), candidates.end(), [](const Iterate& l, const Iterate& r) { return l.c_x < r.c_x; });
    const Iterate* best = &candidates.front();
    for (const auto& c : candidates) {
        if (c.objective < best->objective) {
            best = &c;
        }
    }
    out.c_x_star = best->c_x;
    out.objective = best->objective;
    return out;
}

OptResult bisect_power(const SystemParams& sys, const RateTarget& target, double c_x, const SearchConfig& cfg) {
    check_ub_args(sys, sys.p_max, c_x, "bisect_power");
    cfg.validate();
    if (c_x == 0.0) {
        PowerProblem prob{[&](double x) { return pgs_exact(sys, target, x); },
                          [&](double x) { return -pgs_log_success_slope(sys, target, x); }};
        return power_search(sys, prob, 0.0, cfg);
    }
    return power_search(sys, ub_power_problem(sys, target, c_x), c_x, cfg);
}

OptResult coordinate_descent(const SystemParams& sys, const RateTarget& target, const SearchConfig& cfg) {
    require_rayleigh(sys, "coordinate_descent");
    cfg.validate();
    OptResult out;
    double p = sys.p_max;
    double c = 0.0;
    double f = ub(sys, target, p, c);
    out.trace.push_back({p, c, f});
    int iters = 0;
    while (iters < cfg.max_iters) {
        ++iters;
        const double f_start = f;
        // Each coordinate step is accepted only if it does not increase the
        // bound, so tolerance-level bisection noise cannot break descent.
        const auto pw = power_search(sys, ub_power_problem(sys, target, c), c, cfg);
        if (pw.objective <= f) {
            p = pw.p_r_star;
            f = pw.objective;
            out.trace.push_back({p, c, f});
        }
        const auto cx = bisect_circularity(sys, target, p, cfg);
        if (cx.objective <= f) {
            c = cx.c_x_star;
            f = cx.objective;
            out.trace.push_back({p, c, f});
        }
        if (f_start - f < cfg.f_tol) {
            out.converged = true;
            break;
        }
    }
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
        if (out.trace[i].objective > out.trace[i - 1].objective) {
            throw NumericalError("coordinate_descent: objective increased; a 1D solver is broken");
        }
    }
    out.p_r_star = p;
    out.c_x_star = c;
    out.objective = f;
    out.iterations = iters;
    return out;
}

OptResult grid_search(const SystemParams& sys, const Objective& objective, bool maximize, const SearchConfig& cfg) {
    sys.validate();
    cfg.validate();
    const int n = cfg.grid_n;
    struct RowBest {
        double value;
        int j;
    };
    std::vector<RowBest> rows(n);
    auto better = [maximize](double a, double b) { return maximize ? a > b : a < b; };
    auto row = [&](int i) {
        const double p = power_point(sys.p_max, i + 1, n);
        RowBest best{objective(p, 0.0), 0};
        for (int j = 1; j < n; ++j) {
            const double v = objective(p, static_cast<double>(j) / (n - 1));
            if (better(v, best.value)) {
                best = {v, j};
            }
        }
        if (!std::isfinite(best.value)) {
            throw NumericalError("grid_search: non-finite objective at p_r = " + std::to_string(p));
        }
        rows[i] = best;
    };

    const int threads = std::min(cfg.threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) {
            row(i);
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < n; i += threads) {
                        row(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    // Row-ordered reduction keeps the tie-break independent of scheduling.
    int bi = 0;
    for (int i = 1; i < n; ++i) {
        if (better(rows[i].value, rows[bi].value)) {
            bi = i;
        }
    }
    OptResult out;
    out.p_r_star = power_point(sys.p_max, bi + 1, n);
    out.c_x_star = static_cast<double>(rows[bi].j) / (n - 1);
    out.objective = rows[bi].value;
    out.iterations = n * n;
    out.converged = true;
    return out;
}

OptResult grid_search(const SystemParams& sys, const RateTarget& target, Metric metric, const SearchConfig& cfg) {
    return grid_search(
        sys, [&](double p, double c) { return evaluate_metric(metric, sys, target, p, c); }, is_maximized(metric),
        cfg);
}

OptResult grid_search_circularity(const Objective& objective, bool maximize, double p_r, int n) {
    if (n < 2) {
        throw DomainError("grid_search_circularity: need at least two points");
    }
    OptResult out;
    out.p_r_star = p_r;
    out.objective = objective(p_r, 0.0);
    for (int j = 1; j < n; ++j) {
        const double c = static_cast<double>(j) / (n - 1);
        const double v = objective(p_r, c);
        if (maximize ? v > out.objective : v < out.objective) {
            out.objective = v;
            out.c_x_star = c;
        }
    }
    out.iterations = n;
    out.converged = true;
    return out;
}

OptResult grid_search_power(const Objective& objective, bool maximize, double p_max, double c_x, int n) {
    if (n < 1) {
        throw DomainError("grid_search_power: need at least one point");
    }
    OptResult out;
    out.c_x_star = c_x;
    out.p_r_star = power_point(p_max, 1, n);
    out.objective = objective(out.p_r_star, c_x);
    for (int i = 2; i <= n; ++i) {
        const double p = power_point(p_max, i, n);
        const double v = objective(p, c_x);
        if (maximize ? v > out.objective : v < out.objective) {
            out.objective = v;
            out.p_r_star = p;
        }
    }
    out.iterations = n;
    out.converged = true;
    return out;
}

} // namespace igsrelay
