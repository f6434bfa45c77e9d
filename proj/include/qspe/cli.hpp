// Command-line front end. Subcommands: sweep, decompose, counts, verify.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qspe::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kValidation = 3,
  kIo = 4,
};

/// Runs the CLI on `args` (without the program name). Results go to the
/// --out file or `out`; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "2,4,8", "2..6" or mixtures such as "2..4,8". Throws
/// std::invalid_argument on malformed input.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace qspe::cli
