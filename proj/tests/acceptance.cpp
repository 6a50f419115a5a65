// Acceptance suite: runs every verification criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit 0 iff all pass.

#include "bilab/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

    const std::vector<bilab::CheckResult> results = bilab::run_all_checks(seed);
    bool all = true;
    int index = 0;
    for (const bilab::CheckResult& r : results) {
        ++index;
        std::printf("%s criterion %2d %-28s (%6.2f s)  %s\n",
                    r.pass ? "PASS" : "FAIL", index, r.name.c_str(),
                    r.runtime_seconds, r.details.dump().c_str());
        all = all && r.pass;
    }
    std::printf("%s: %d/%d criteria passed\n", all ? "OK" : "FAILURES",
                static_cast<int>(std::count_if(results.begin(), results.end(),
                                               [](const auto& r) { return r.pass; })),
                index);
    return all ? 0 : 1;
}
