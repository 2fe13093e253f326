// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure.  Usage: acceptance [suite] [threads]
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "spoly/acceptance.hpp"
#include "spoly/parallel.hpp"

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "all";
    int threads = spoly::resolve_threads(argc > 2 ? std::atoi(argv[2]) : 0);
    std::vector<spoly::CriterionResult> results;
    try {
        results = spoly::run_acceptance(suite, threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    std::printf("%zu/%zu criteria passed\n",
                static_cast<std::size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const auto& r) { return r.passed; })),
                results.size());
    return all_ok ? 0 : 1;
}
