#pragma once

#include "bvtp/problem.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace bvtp {

/// Parses the problem-definition text format:
///
///     # comment
///     [domain]
///     a  = -1
///     b  = 1
///     xi = [0]
///
///     [rho]
///     values = [1, 2]
///
///     [potential]
///     pieces = [[0], [0, 0, 1]]     # one coefficient list per piece, ascending degree
///
///     [boundary.left]
///     delta1 = 1
///     delta2 = 0
///     delta3 = 0
///     delta4 = -1
///
///     [boundary.right]
///     gamma1 = 1
///     gamma2 = 0
///     gamma3 = 0
///     gamma4 = -1
///
///     [transmission.1]              # one section per interface, numbered from 1
///     row1 = [1, 0, -1/2, 0]        # delta+_1, delta+_0, delta-_1, delta-_0
///     row2 = [0, 1, 0, -2]          # gamma+_1, gamma+_0, gamma-_1, gamma-_0
///
/// Numbers are decimal literals or rationals `p/q`. Every key is required,
/// unknown sections or keys are rejected, and errors carry line numbers.
/// The result is not validated; pass it through validate_problem().
ProblemSpec parse_problem(std::string_view text);

ProblemSpec load_problem(const std::filesystem::path& path);

/// Writes `spec` in the same format with round-trip number formatting.
std::string format_problem(const ProblemSpec& spec);

}  // namespace bvtp
