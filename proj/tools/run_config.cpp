#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "igsrelay/errors.hpp"

namespace igsrelay::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const Assignment& a, const std::string& msg) {
    throw ConfigError(a.origin + ": " + a.key + ": " + msg);
}

double number(const Assignment& a) {
    double v = 0.0;
    const char* first = a.value.data();
    const char* last = first + a.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        fail(a, "expected a finite number, got '" + a.value + "'");
    }
    return v;
}

long long integer(const Assignment& a) {
    long long v = 0;
    const char* first = a.value.data();
    const char* last = first + a.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        fail(a, "expected an integer, got '" + a.value + "'");
    }
    return v;
}

std::vector<std::string> list(const Assignment& a, const std::vector<std::string>& allowed) {
    std::vector<std::string> out;
    std::stringstream ss(a.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (std::find(allowed.begin(), allowed.end(), item) == allowed.end()) {
            fail(a, "unknown entry '" + item + "'");
        }
        if (std::find(out.begin(), out.end(), item) == out.end()) {
            out.push_back(item);
        }
    }
    if (out.empty()) {
        fail(a, "empty list");
    }
    return out;
}

std::string choice(const Assignment& a, const std::vector<std::string>& allowed) {
    if (std::find(allowed.begin(), allowed.end(), a.value) == allowed.end()) {
        fail(a, "unknown value '" + a.value + "'");
    }
    return a.value;
}

double positive(const Assignment& a) {
    const double v = number(a);
    if (!(v > 0.0)) {
        fail(a, "must be positive");
    }
    return v;
}

double db(double x) { return std::pow(10.0, x / 10.0); }

const std::vector<std::string> kSweepVars = {"c_x", "p_r", "p_s", "p_max", "pi_sr", "pi_rd", "pi_rr", "pi_sd", "r"};

bool power_like(const std::string& v) { return v != "c_x" && v != "r"; }

SweepSpec& sweep(RunConfig& c) {
    if (!c.sweep) {
        c.sweep = SweepSpec{};
    }
    return *c.sweep;
}

int shape(const Assignment& a) {
    const long long m = integer(a);
    if (m < 1 || m > 4) {
        fail(a, "Nakagami shape must be an integer in 1..4");
    }
    return static_cast<int>(m);
}

using Setter = std::function<void(RunConfig&, const Assignment&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> s = {
        {"pi_sr_db", [](RunConfig& c, const Assignment& a) { c.sys.sr.pi = db(number(a)); }},
        {"pi_rd_db", [](RunConfig& c, const Assignment& a) { c.sys.rd.pi = db(number(a)); }},
        {"pi_rr_db", [](RunConfig& c, const Assignment& a) { c.sys.rr.pi = db(number(a)); }},
        {"pi_sd_db", [](RunConfig& c, const Assignment& a) { c.sys.sd.pi = db(number(a)); }},
        {"m", [](RunConfig& c, const Assignment& a) { c.sys.sr.m = c.sys.rd.m = shape(a); }},
        {"m_sr", [](RunConfig& c, const Assignment& a) { c.sys.sr.m = shape(a); }},
        {"m_rd", [](RunConfig& c, const Assignment& a) { c.sys.rd.m = shape(a); }},
        {"m_rr", [](RunConfig& c, const Assignment& a) { c.sys.rr.m = shape(a); }},
        {"m_sd", [](RunConfig& c, const Assignment& a) { c.sys.sd.m = shape(a); }},
        {"p_s", [](RunConfig& c, const Assignment& a) { c.sys.p_s = positive(a); }},
        {"p_max", [](RunConfig& c, const Assignment& a) { c.sys.p_max = positive(a); }},
        {"p_r", [](RunConfig& c, const Assignment& a) { c.p_r = positive(a); }},
        {"c_x",
         [](RunConfig& c, const Assignment& a) {
             c.c_x = number(a);
             if (c.c_x < 0.0 || c.c_x > 1.0) {
                 fail(a, "circularity must lie in [0, 1]");
             }
         }},
        {"r", [](RunConfig& c, const Assignment& a) { c.r = positive(a); }},
        {"sweep.var", [](RunConfig& c, const Assignment& a) { sweep(c).var = choice(a, kSweepVars); }},
        {"sweep.start", [](RunConfig& c, const Assignment& a) { sweep(c).start = number(a); }},
        {"sweep.stop", [](RunConfig& c, const Assignment& a) { sweep(c).stop = number(a); }},
        {"sweep.points",
         [](RunConfig& c, const Assignment& a) {
             const long long n = integer(a);
             if (n < 1 || n > 100000) {
                 fail(a, "must be in 1..100000");
             }
             sweep(c).points = static_cast<int>(n);
         }},
        {"sweep.scale",
         [](RunConfig& c, const Assignment& a) { sweep(c).db = choice(a, {"linear", "db"}) == "db"; }},
        {"metrics", [](RunConfig& c, const Assignment& a) { c.metrics = list(a, {"outage", "ergodic", "throughput"}); }},
        {"methods", [](RunConfig& c, const Assignment& a) { c.methods = list(a, {"exact", "lb", "ub", "mc"}); }},
        {"optimizer",
         [](RunConfig& c, const Assignment& a) { c.optimizer = choice(a, {"1d-cx", "1d-pr", "2d-cd", "grid"}); }},
        {"objective",
         [](RunConfig& c, const Assignment& a) {
             c.objective = choice(a, {"outage_exact", "outage_lb", "outage_ub", "ergodic_exact", "ergodic_ub",
                                      "ergodic_lb", "throughput"});
         }},
        {"grid_n",
         [](RunConfig& c, const Assignment& a) {
             const long long n = integer(a);
             if (n < 101 || n > 100001) {
                 fail(a, "must be in 101..100001");
             }
             c.grid_n = static_cast<int>(n);
         }},
        {"throughput.r_start", [](RunConfig& c, const Assignment& a) { c.r_start = number(a); }},
        {"throughput.r_stop", [](RunConfig& c, const Assignment& a) { c.r_stop = number(a); }},
        {"throughput.r_points",
         [](RunConfig& c, const Assignment& a) {
             const long long n = integer(a);
             if (n < 1 || n > 10000) {
                 fail(a, "must be in 1..10000");
             }
             c.r_points = static_cast<int>(n);
         }},
        {"out", [](RunConfig& c, const Assignment& a) { c.out = a.value; }},
        {"mc.seed",
         [](RunConfig& c, const Assignment& a) {
             const long long s = integer(a);
             if (s < 0) {
                 fail(a, "must be nonnegative");
             }
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"mc.samples",
         [](RunConfig& c, const Assignment& a) {
             const long long n = integer(a);
             if (n < 10000) {
                 fail(a, "must be at least 10000");
             }
             c.samples = n;
         }},
        {"threads",
         [](RunConfig& c, const Assignment& a) {
             const long long n = integer(a);
             if (n < 1 || n > 1024) {
                 fail(a, "must be in 1..1024");
             }
             c.threads = static_cast<int>(n);
         }},
    };
    return s;
}

} // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) {
            k.push_back(name);
        }
        return k;
    }();
    return keys;
}

std::vector<Assignment> parse_scenario(const std::string& text, const std::string& name) {
    std::vector<Assignment> out;
    std::stringstream ss(text);
    std::string line;
    int no = 0;
    while (std::getline(ss, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string origin = name + ":" + std::to_string(no);
        if (eq == std::string::npos) {
            throw ConfigError(origin + ": expected 'key = value', got '" + line + "'");
        }
        Assignment a{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), origin};
        if (a.key.empty() || a.value.empty()) {
            throw ConfigError(origin + ": expected 'key = value', got '" + line + "'");
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Assignment> read_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open scenario file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

Assignment parse_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--set: expected KEY=VALUE, got '" + kv + "'");
    }
    Assignment a{trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)), "--set"};
    if (a.key.empty() || a.value.empty()) {
        throw ConfigError("--set: expected KEY=VALUE, got '" + kv + "'");
    }
    return a;
}

void apply_assignments(RunConfig& cfg, const std::vector<Assignment>& assignments) {
    for (const auto& a : assignments) {
        const auto it = setters().find(a.key);
        if (it == setters().end()) {
            throw ConfigError(a.origin + ": unknown key '" + a.key + "'");
        }
        it->second(cfg, a);
    }
    validate(cfg);
}

std::vector<SweepPoint> sweep_points(const SweepSpec& s) {
    std::vector<SweepPoint> pts;
    for (int k = 0; k < s.points; ++k) {
        const double axis = s.points == 1 ? s.start : s.start + (s.stop - s.start) * k / (s.points - 1);
        pts.push_back({axis, s.db ? db(axis) : axis});
    }
    return pts;
}

RunConfig at_point(const RunConfig& cfg, const std::string& var, double v) {
    RunConfig c = cfg;
    if (var == "c_x") {
        c.c_x = v;
    } else if (var == "p_r") {
        c.p_r = v;
    } else if (var == "p_s") {
        c.sys.p_s = v;
    } else if (var == "p_max") {
        // A budget sweep transmits at the full budget.
        c.sys.p_max = v;
        c.p_r = v;
    } else if (var == "pi_sr") {
        c.sys.sr.pi = v;
    } else if (var == "pi_rd") {
        c.sys.rd.pi = v;
    } else if (var == "pi_rr") {
        c.sys.rr.pi = v;
    } else if (var == "pi_sd") {
        c.sys.sd.pi = v;
    } else if (var == "r") {
        c.r = v;
    }
    return c;
}

namespace {

void check_model(const RunConfig& c, const std::string& where) {
    try {
        c.sys.validate();
        c.signal().validate(c.sys);
        RateTarget t(c.r);
        (void)t;
    } catch (const DomainError& e) {
        throw ConfigError(where + e.what());
    }
}

} // namespace

void validate(const RunConfig& cfg) {
    check_model(cfg, "p_s/p_r/p_max/r: ");
    if (!(cfg.r_start > 0.0) || cfg.r_stop < cfg.r_start) {
        throw ConfigError("throughput.r_start/r_stop: need 0 < r_start <= r_stop");
    }
    if (!cfg.sweep) {
        return;
    }
    const SweepSpec& s = *cfg.sweep;
    if (s.var.empty()) {
        throw ConfigError("sweep.var: missing (sweep.* keys given without a variable)");
    }
    if (s.db && !power_like(s.var)) {
        throw ConfigError("sweep.scale: dB applies only to powers and mean gains, not '" + s.var + "'");
    }
    for (const auto& p : sweep_points(s)) {
        check_model(at_point(cfg, s.var, p.linear), "sweep point " + s.var + "=" + std::to_string(p.axis) + ": ");
    }
}

} // namespace igsrelay::cli
