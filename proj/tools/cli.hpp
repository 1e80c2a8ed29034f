#pragma once

#include <ostream>

namespace bvtp::cli {

/// Entry point of `bvtp <command> <problem-file> [options]`. Returns the exit
/// code: 0 success, 1 input error, 2 numerical failure, 2 + failed checks for verify.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bvtp::cli
