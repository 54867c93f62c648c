#pragma once
// cli.hpp - the command dispatcher behind tools/elab.cpp, exposed so tests
// can drive the command surface in-process.
//
// Exit codes: 0 success, 1 usage error, 2 hypothesis violated, 3 budget
// exceeded, 4 verification failure.

#include <string>
#include <vector>

namespace elab {

int cli_main(std::vector<std::string> args);
int cli_main(int argc, char** argv);

}  // namespace elab
