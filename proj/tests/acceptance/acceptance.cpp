#include "wavekin/cli/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

// Runs acceptance criteria 1-10 (or the ids given on the command line) and
// prints one PASS/FAIL line each. Exit status is the number of failures.
int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i)
        ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (int id = 1; id <= 10; ++id)
            ids.push_back(id);

    int failures = 0;
    for (int id : ids) {
        const wavekin::CriterionResult r = wavekin::run_criterion(id);
        std::printf("%s\n", r.summary().c_str());
        for (const auto& p : r.parts)
            if (!p.detail.empty())
                std::printf("    %s: %s\n", p.name.c_str(), p.detail.c_str());
        std::fflush(stdout);
        failures += r.passed() ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failures, ids.size());
    return failures;
}
