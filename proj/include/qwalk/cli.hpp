#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/marked_set.hpp"

namespace qwalk {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitVerificationFailed = 1,
  kExitInvalidConfig = 2,
  kExitBudgetExceeded = 3,
  kExitImpossibleConstruction = 4,
};

/// Overrides the default output directory (the working directory).
inline constexpr const char* kOutputDirEnv = "QWALK_OUTPUT_DIR";

/// Subcommands: simulate, verify, table, graph-sim. `argv[0]` is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with arguments excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "MxL" or "MxL@x,y"; without an origin the block is centred on the grid.
BlockSpec parse_block(std::string_view text, int n);
/// "x,y;x,y;..."; the empty string is the empty set.
std::vector<Cell> parse_cells(std::string_view text);
/// "a,b,c" of integers; the empty string gives an empty list.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace qwalk
