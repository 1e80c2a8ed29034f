#pragma once

#include "bvtp/problem.hpp"
#include "bvtp/spectrum.hpp"

#include <string>
#include <vector>

namespace bvtp::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0;      ///< measured quantity (residual, violation, distance)
    double threshold = 0;  ///< pass when value < threshold
    std::string detail;
};

struct VerifyOptions {
    Window window{-10, 200};
    std::size_t grid = 2101;
    unsigned seed = 20240607;
};

/// Runs every module-level invariant on one problem. Deterministic for a fixed seed.
std::vector<CheckResult> run_verification(const ValidatedProblem& problem, const VerifyOptions& options);

}  // namespace bvtp::cli
