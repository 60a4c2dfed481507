#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace c0forge {

/// Runs one command; args exclude the program name. Returns the exit code:
/// 0 pass, 1 verification failure, 2 usage, parse or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace c0forge
