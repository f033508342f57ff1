#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "csv.hpp"
#include "igsrelay/acceptance.hpp"
#include "igsrelay/ergodic.hpp"
#include "igsrelay/errors.hpp"
#include "igsrelay/montecarlo.hpp"
#include "igsrelay/optimize.hpp"
#include "igsrelay/outage.hpp"

namespace igsrelay::cli {

namespace {

// Writes to cfg.out when set, else to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw ConfigError("out: cannot open '" + path + "' for writing");
            }
            os_ = &file_;
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

McConfig mc_of(const RunConfig& cfg, int threads) {
    McConfig mc;
    mc.n_samples = cfg.samples;
    mc.seed = cfg.seed;
    mc.threads = threads;
    return mc;
}

struct Diagnostic {
    int point;
    std::string axis;
    std::string column;
    std::string message;
};

void write_diagnostics(const RunConfig& cfg, const std::vector<Diagnostic>& diags, std::ostream& log) {
    if (cfg.out.empty()) {
        for (const auto& d : diags) {
            log << "point " << d.point << " (" << d.axis << ") " << d.column << ": " << d.message << '\n';
        }
        return;
    }
    std::ofstream f(cfg.out + ".diagnostics.csv", std::ios::binary);
    csv_row(f, {"point", "axis", "column", "message"});
    for (const auto& d : diags) {
        csv_row(f, {std::to_string(d.point), d.axis, d.column, d.message});
    }
}

// ---- sweep ------------------------------------------------------------------

struct Column {
    std::string name;
    std::string metric;
    std::string method;
};

std::vector<Column> sweep_columns(const RunConfig& cfg, std::vector<std::string>& notes) {
    std::vector<Column> cols;
    const bool rayleigh = cfg.sys.rayleigh();
    for (const auto& metric : cfg.metrics) {
        for (const auto& method : cfg.methods) {
            if (!rayleigh && ((metric == "outage" && method == "ub") || (metric == "ergodic" && method == "lb") ||
                              (metric == "throughput" && method == "ub"))) {
                notes.push_back(metric + "/" + method + " needs Rayleigh fading on every link; column omitted");
                continue;
            }
            std::string name = metric + "_" + method;
            // Outage bounds flip direction in throughput.
            if (metric == "throughput" && method == "lb") {
                name = "throughput_ub_from_outage_lb";
            } else if (metric == "throughput" && method == "ub") {
                name = "throughput_lb_from_outage_ub";
            }
            cols.push_back({name, metric, method});
            if (method == "mc") {
                cols.push_back({name + "_std_error", metric, "mc_se"});
            }
        }
    }
    return cols;
}

struct PointResult {
    std::vector<std::optional<double>> cells;
    std::vector<std::pair<std::string, std::string>> notes;  // column, message
};

PointResult evaluate_point(const RunConfig& c, const std::vector<Column>& cols) {
    PointResult res;
    const SignalParams sig = c.signal();
    const RateTarget t(c.r);
    std::map<std::string, McEstimate> mc_cache;
    std::map<std::string, double> outage_cache;
    auto outage = [&](const std::string& method) -> double {
        if (auto it = outage_cache.find(method); it != outage_cache.end()) {
            return it->second;
        }
        double v = 0.0;
        if (method == "exact") {
            v = p_e2e_exact(c.sys, sig, t).value;
        } else if (method == "lb") {
            v = p_e2e_lb(c.sys, sig, t).value;
        } else if (method == "ub") {
            v = p_e2e_rayleigh_ub(c.sys, sig, t).value;
        }
        return outage_cache[method] = v;
    };
    auto mc = [&](const std::string& metric) -> const McEstimate& {
        auto it = mc_cache.find(metric);
        if (it == mc_cache.end()) {
            const McConfig m = mc_of(c, 1);
            it = mc_cache
                     .emplace(metric, metric == "ergodic" ? estimate_ergodic(c.sys, sig, m)
                                                          : estimate_outage(c.sys, sig, t, m))
                     .first;
        }
        return it->second;
    };
    for (const auto& col : cols) {
        std::optional<double> v;
        try {
            if (col.method == "mc" || col.method == "mc_se") {
                const auto& e = mc(col.metric == "ergodic" ? "ergodic" : "outage");
                const double scale = col.metric == "throughput" ? c.r : 1.0;
                if (col.method == "mc_se") {
                    v = scale * e.std_error;
                } else {
                    v = col.metric == "throughput" ? c.r * (1.0 - e.mean) : e.mean;
                }
            } else if (col.metric == "outage") {
                v = outage(col.method);
            } else if (col.metric == "throughput") {
                v = c.r * (1.0 - outage(col.method));
            } else if (col.method == "exact") {
                v = r_e2e_exact(c.sys, sig).value;
            } else if (col.method == "lb") {
                v = r_e2e_rayleigh_lb(c.sys, sig).value;
            } else {
                try {
                    v = r_e2e_ub(c.sys, sig).value;
                } catch (const DegenerateError&) {
                    throw;
                } catch (const NumericalError& e) {
                    v = r_e2e_ub_by_quadrature(c.sys, sig);
                    res.notes.emplace_back(col.name, std::string("closed form rejected (") + e.what() +
                                                         "); value from quadrature of the defining integral");
                }
            }
        } catch (const std::exception& e) {
            res.notes.emplace_back(col.name, e.what());
        }
        res.cells.push_back(v);
    }
    return res;
}

} // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& out_fallback, std::ostream& log) {
    if (!cfg.sweep) {
        throw ConfigError("sweep.var: required for the sweep command");
    }
    const SweepSpec& s = *cfg.sweep;
    std::vector<std::string> notes;
    const auto cols = sweep_columns(cfg, notes);
    if (cols.empty()) {
        throw ConfigError("metrics/methods: no computable column for this scenario");
    }
    const auto pts = sweep_points(s);
    std::vector<PointResult> results(pts.size());
    const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(pts.size())));
    std::vector<std::thread> pool;
    auto work = [&](int w) {
        for (std::size_t i = w; i < pts.size(); i += workers) {
            results[i] = evaluate_point(at_point(cfg, s.var, pts[i].linear), cols);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    Sink sink(cfg.out, out_fallback);
    std::vector<std::string> header;
    if (s.db) {
        header.push_back(s.var + "_db");
    }
    header.push_back(s.var);
    for (const auto& c : cols) {
        header.push_back(c.name);
    }
    csv_row(*sink, header);
    std::vector<Diagnostic> diags;
    for (const auto& n : notes) {
        diags.push_back({-1, "", "", n});
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::string> row;
        if (s.db) {
            row.push_back(csv_number(pts[i].axis));
        }
        row.push_back(csv_number(pts[i].linear));
        for (const auto& v : results[i].cells) {
            row.push_back(csv_number(v));
        }
        csv_row(*sink, row);
        for (const auto& [col, msg] : results[i].notes) {
            diags.push_back({static_cast<int>(i), csv_number(pts[i].axis), col, msg});
        }
    }
    write_diagnostics(cfg, diags, log);
    return kOk;
}

// ---- optimize ---------------------------------------------------------------

int cmd_optimize(const RunConfig& cfg, std::ostream& out_fallback, std::ostream& log) {
    const RateTarget t(cfg.r);
    SearchConfig sc;
    sc.grid_n = cfg.grid_n;
    sc.threads = cfg.threads;
    OptResult res;
    std::string objective;
    try {
        if (cfg.optimizer == "1d-cx") {
            res = bisect_circularity(cfg.sys, t, cfg.sys.p_max, sc);
            objective = "outage_ub";
        } else if (cfg.optimizer == "1d-pr") {
            res = bisect_power(cfg.sys, t, cfg.c_x, sc);
            objective = cfg.c_x == 0.0 ? "outage_exact" : "outage_ub";
        } else if (cfg.optimizer == "2d-cd") {
            res = coordinate_descent(cfg.sys, t, sc);
            objective = "outage_ub";
        } else {
            res = grid_search(cfg.sys, t, metric_from_string(cfg.objective), sc);
            objective = cfg.objective;
        }
    } catch (const DegenerateError&) {
        throw;
    } catch (const NumericalError&) {
        throw;
    } catch (const DomainError& e) {
        throw ConfigError(std::string("optimizer ") + cfg.optimizer + ": " + e.what());
    }
    const double exact = p_e2e_exact(cfg.sys, {res.p_r_star, res.c_x_star}, t).value;

    Sink sink(cfg.out, out_fallback);
    csv_row(*sink, {"optimizer", "objective_method", "p_r_star", "c_x_star", "objective", "outage_exact_at_optimum",
                    "iterations", "converged"});
    csv_row(*sink, {cfg.optimizer, objective, csv_number(res.p_r_star), csv_number(res.c_x_star),
                    csv_number(res.objective), csv_number(exact), std::to_string(res.iterations),
                    res.converged ? "true" : "false"});

    log << "optimizer " << cfg.optimizer << " on " << objective << ": P_r* = " << res.p_r_star
        << ", C_x* = " << res.c_x_star << ", objective = " << res.objective << ", exact outage there = " << exact
        << ", iterations = " << res.iterations << (res.converged ? ", converged" : ", NOT converged") << '\n';
    if (!res.trace.empty()) {
        if (cfg.out.empty()) {
            for (const auto& it : res.trace) {
                log << "  trace p_r=" << it.p_r << " c_x=" << it.c_x << " objective=" << it.objective << '\n';
            }
        } else {
            std::ofstream f(cfg.out + ".trace.csv", std::ios::binary);
            csv_row(f, {"step", "p_r", "c_x", "objective"});
            for (std::size_t i = 0; i < res.trace.size(); ++i) {
                const auto& it = res.trace[i];
                csv_row(f, {std::to_string(i), csv_number(it.p_r), csv_number(it.c_x), csv_number(it.objective)});
            }
        }
    }
    return res.converged ? kOk : kNumericalFailure;
}

// ---- throughput -------------------------------------------------------------

int cmd_throughput(const RunConfig& cfg, std::ostream& out_fallback, std::ostream& log) {
    const bool rayleigh = cfg.sys.rayleigh();
    const Metric igs_metric = rayleigh ? Metric::OutageUpperBound : Metric::OutageLowerBound;
    const std::string igs_tag = std::string(to_string(igs_metric));
    SearchConfig sc;
    sc.grid_n = cfg.grid_n;
    sc.threads = cfg.threads;
    const McConfig mc = mc_of(cfg, cfg.threads);

    Sink sink(cfg.out, out_fallback);
    csv_row(*sink, {"r", "fdr_pgs_exact", "fdr_pgs_p_r", "fdr_igs_" + igs_tag + "_opt", "fdr_igs_exact_at_opt",
                    "fdr_igs_p_r", "fdr_igs_c_x", "hdr_mhdf_mc", "hdr_mhdf_mc_std_error", "hdr_mrc_mc",
                    "hdr_mrc_mc_std_error"});
    std::vector<Diagnostic> diags;
    for (int k = 0; k < cfg.r_points; ++k) {
        const double r =
            cfg.r_points == 1 ? cfg.r_start : cfg.r_start + (cfg.r_stop - cfg.r_start) * k / (cfg.r_points - 1);
        const RateTarget t(r);
        std::vector<std::string> row{csv_number(r)};
        try {
            OptResult pgs;
            if (rayleigh) {
                pgs = bisect_power(cfg.sys, t, 0.0, sc);
            } else {
                pgs = grid_search_power([&](double p, double) { return p_e2e_lb(cfg.sys, {p, 0.0}, t).value; },
                                        false, cfg.sys.p_max, 0.0, cfg.grid_n);
            }
            row.push_back(csv_number(r * (1.0 - pgs.objective)));
            row.push_back(csv_number(pgs.p_r_star));
        } catch (const std::exception& e) {
            row.insert(row.end(), 2, "");
            diags.push_back({k, csv_number(r), "fdr_pgs_exact", e.what()});
        }
        try {
            const auto igs = grid_search(cfg.sys, t, igs_metric, sc);
            row.push_back(csv_number(r * (1.0 - igs.objective)));
            row.push_back(csv_number(r * (1.0 - p_e2e_exact(cfg.sys, {igs.p_r_star, igs.c_x_star}, t).value)));
            row.push_back(csv_number(igs.p_r_star));
            row.push_back(csv_number(igs.c_x_star));
        } catch (const std::exception& e) {
            row.insert(row.end(), 4, "");
            diags.push_back({k, csv_number(r), "fdr_igs", e.what()});
        }
        for (bool mrc : {false, true}) {
            const auto e = estimate_hdr_outage(cfg.sys, t, mrc, mc);
            row.push_back(csv_number(r * (1.0 - e.mean)));
            row.push_back(csv_number(r * e.std_error));
        }
        csv_row(*sink, row);
    }
    write_diagnostics(cfg, diags, log);
    return kOk;
}

// ---- validate ---------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, const ValidateOverrides& ov, std::ostream& out, std::ostream& log) {
    AcceptanceOptions opts;
    if (ov.seed) opts.seed = *ov.seed;
    if (ov.samples) opts.samples = *ov.samples;
    if (ov.threads) opts.threads = *ov.threads;
    opts.only.insert(ov.only.begin(), ov.only.end());
    std::vector<CriterionReport> reports = run_acceptance(opts, [&](const CriterionReport& r) {
        out << format_report(r) << '\n';
        out.flush();
    });
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.pass;
    }
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            throw ConfigError("out: cannot open '" + cfg.out + "' for writing");
        }
        csv_row(f, {"criterion", "title", "pass", "measured", "threshold", "seconds"});
        for (const auto& r : reports) {
            csv_row(f, {r.id, r.title, r.pass ? "true" : "false", r.measured, r.threshold, csv_number(r.seconds)});
        }
    }
    log << (ok ? "all criteria pass" : "one or more criteria FAIL") << '\n';
    return ok ? kOk : kValidationFailure;
}

} // namespace igsrelay::cli
