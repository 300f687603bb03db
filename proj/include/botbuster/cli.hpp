#pragma once

#include <string>
#include <vector>

namespace botbuster::cli {

/// Dispatches one of the subcommands: simulate, indicators, bic, detect,
/// evaluate, oracle. Returns the process exit status: 0 on success, 2 on
/// usage errors, 1 otherwise, with a single `error: <category>: <message>`
/// line on stderr for failures.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace botbuster::cli
