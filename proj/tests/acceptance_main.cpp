// Prints one PASS/FAIL line per acceptance criterion; exit 1 if any fails.
#include "igsrelay/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    igsrelay::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc) {
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        } else if (a == "--threads" && i + 1 < argc) {
            opts.threads = std::atoi(argv[++i]);
        } else {
            opts.only.insert(a);
        }
    }
    bool ok = true;
    igsrelay::run_acceptance(opts, [&](const igsrelay::CriterionReport& r) {
        std::printf("%s\n", igsrelay::format_report(r).c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    });
    return ok ? 0 : 1;
}
