#pragma once

namespace cubik {

// Command-line entry point. Exit codes: 0 success / valid result, 1 invalid
// solution or failed certification, 2 usage or input error, 3 internal limit
// (oracle size or search budget, rational overflow).
int cli_run(int argc, char** argv);

}  // namespace cubik
