#pragma once

namespace kronlab {

// Exit codes: 0 success, 1 usage or I/O error, 2 infeasible or invalid
// configuration, 3 generator error.
int run_cli(int argc, char** argv);

}  // namespace kronlab
