#pragma once
// `subspace` command-line entry point: separate, scan, synth, bench.

#include <iosfwd>
#include <string>
#include <vector>

namespace subspace::cli {

/// Runs one invocation; returns the process exit status (0 iff every
/// requested output was written).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subspace::cli
