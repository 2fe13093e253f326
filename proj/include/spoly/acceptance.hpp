#pragma once

#include <string>
#include <vector>

namespace spoly {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the verification criteria for one suite: geometry, gap, approx,
// siciak, or all.  Throws std::invalid_argument on an unknown suite.
std::vector<CriterionResult> run_acceptance(const std::string& suite, int threads = 1);

} // namespace spoly
