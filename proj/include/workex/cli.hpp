#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace workex {

// Runs one CLI invocation. Rows go to out (or the --out file), diagnostics to
// err. Returns the exit code: 0 success, 1 usage error, 2 computation error
// (including sweeps that produced error rows).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Expand a grid token list: plain numbers pass through, "lo:hi:step" expands
// inclusively.
std::vector<double> expand_grid(const std::vector<std::string>& tokens);

}  // namespace workex
