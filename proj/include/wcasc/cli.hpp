#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace wcasc {

// Machine-readable command result: the command echo, the instance digest and
// the result payload as ordered key/value rows (exact rationals as "p" or
// "p/q", float bounds with 12 significant digits), plus the exit status. The
// csv format renders the rows verbatim, so re-parsing them recovers the exact
// numbers.
struct RunReport {
  std::vector<std::pair<std::string, std::string>> rows;
  int exit_status = 0;
};

// Dispatches one subcommand (check, cover, maximize, oracle-cover, oracle-max,
// report, gen). Returns the process exit code:
//   0  success, all applicable bounds hold
//   1  property violation or bound not applicable/violated
//   2  input or parse error
//   3  infeasible goal/budget
//   4  enumeration size cap exceeded
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcasc
