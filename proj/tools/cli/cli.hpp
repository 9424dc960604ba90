#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iontrap::cli {

/// Largest chain the equilibrium solver is trusted with at its 1e-13
/// residual target.
inline constexpr int kMaxIons = 50;

/// Runs one invocation. `args` excludes the program name. Data goes to `out`
/// (or --output), failures to `err` as a single JSON line. Returns the
/// process exit code: 0 success, 1 computation error, 2 usage error.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace iontrap::cli
