#pragma once

#include <string>
#include <vector>

#include "pgrad/config.hpp"

namespace pgrad {

// Exit codes: 0 success, 1 config error, 2 solver failure, 3 invariant
// violation, 4 i/o error.
int run_cli(const std::vector<std::string>& args);

int run_solve(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_analyze(const RunConfig& cfg);

}  // namespace pgrad
