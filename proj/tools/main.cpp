// igsrelay: sweep | optimize | throughput | validate
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "igsrelay/errors.hpp"

using namespace igsrelay;
using namespace igsrelay::cli;

namespace {

struct Flags {
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<int> threads;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "scenario file (key = value)");
    cmd->add_option("--set", f.sets, "override KEY=VALUE (repeatable, wins over the file)");
    cmd->add_option("--out", f.out, "output CSV (default stdout)");
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_option("--samples", f.samples, "Monte Carlo samples per estimate (>= 10000)");
    cmd->add_option("--threads", f.threads, "worker threads");
}

RunConfig load(const Flags& f) {
    std::vector<Assignment> all;
    if (!f.config.empty()) {
        all = read_scenario_file(f.config);
    }
    for (const auto& s : f.sets) {
        all.push_back(parse_override(s));
    }
    if (!f.out.empty()) all.push_back({"out", f.out, "--out"});
    if (f.seed) all.push_back({"mc.seed", std::to_string(*f.seed), "--seed"});
    if (f.samples) all.push_back({"mc.samples", std::to_string(*f.samples), "--samples"});
    if (f.threads) all.push_back({"threads", std::to_string(*f.threads), "--threads"});
    RunConfig cfg;
    apply_assignments(cfg, all);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Improper-signaling full-duplex relay analysis"};
    app.require_subcommand(1);
    Flags f;
    auto* sweep = app.add_subcommand("sweep", "metric sweep over one scenario variable");
    auto* optimize = app.add_subcommand("optimize", "relay power / circularity optimization");
    auto* throughput = app.add_subcommand("throughput", "optimized FDR vs HDR throughput per target rate");
    auto* validate = app.add_subcommand("validate", "run the acceptance suite");
    for (auto* c : {sweep, optimize, throughput, validate}) {
        add_flags(c, f);
    }
    std::vector<std::string> only;
    validate->add_option("criteria", only, "criterion ids to run (default: all)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    try {
        const RunConfig cfg = load(f);
        if (*sweep) return cmd_sweep(cfg, std::cout, std::cerr);
        if (*optimize) return cmd_optimize(cfg, std::cout, std::cerr);
        if (*throughput) return cmd_throughput(cfg, std::cout, std::cerr);
        return cmd_validate(cfg, {f.seed, f.samples, f.threads, only}, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}
