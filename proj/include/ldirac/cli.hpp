#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldirac::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

/// Runs one command; args excludes the program name. The one-line summary
/// goes to `out`, usage text and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

/// Parses "3/2", "1.5" or "-1/2" into twice the value. Throws
/// std::invalid_argument unless the value is a half-odd-integer.
int parse_half_integer_twice(const std::string& text);

}  // namespace ldirac::cli
