// Dedicated acceptance runner: one pass/fail line per criterion, nonzero exit
// on any failure. `--criterion N` runs a single criterion (used by ctest to
// report them individually).

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <vector>

#include "pcsp/acceptance.hpp"

int main(int argc, char ** argv)
{
    std::vector<int> which;
    std::uint64_t seed = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            which.push_back(std::atoi(argv[++i]));
        }
        else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        }
        else {
            std::cerr << "usage: acceptance [--criterion N]... [--seed S]\n";
            return 2;
        }
    }

    auto results = pcsp::run_acceptance(which, seed, &std::cout);
    for (const auto & r : results)
        if (! r.pass)
            return 1;
    return 0;
}
