#pragma once

#include "bvtp/error.hpp"
#include "bvtp/problem.hpp"
#include "bvtp/problem_io.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>

namespace test_support {

inline std::string fixture_path(const std::string& name) { return std::string(BVTP_FIXTURE_DIR) + "/" + name; }

inline bvtp::ValidatedProblem p0() { return bvtp::validate_problem(bvtp::fixtures::p0()); }
inline bvtp::ValidatedProblem p1() { return bvtp::validate_problem(bvtp::fixtures::p1()); }
inline bvtp::ValidatedProblem p2() { return bvtp::validate_problem(bvtp::fixtures::p2()); }

/// Code of the bvtp::Error thrown by `fn`, or nullopt if nothing was thrown.
inline std::optional<bvtp::ErrorCode> error_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const bvtp::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline double relative(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline std::mt19937_64 rng(unsigned seed = 12345) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace test_support
