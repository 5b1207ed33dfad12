#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syncwalk::cli {

// Exit codes: 0 ok / verified, 1 parse or I/O failure, 2 precondition not met
// (including failed verification), 3 search budget exhausted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace syncwalk::cli
