#include <iostream>
#include <string>
#include <vector>

#include "wcasc/cli.hpp"

namespace {

const char* kUsage = R"(usage: wcasc <command> [args]

commands:
  check FILE [--format text|csv]
  cover FILE --goal Q [--format text|csv]
  maximize FILE --budget B [--format text|csv]
  oracle-cover FILE --goal Q [--format text|csv]
  oracle-max FILE --budget B [--format text|csv]
  report FILE --goal Q [--budget B] [--format text|csv]
  gen KIND [--seed N] [--items N] [--realizations N] [--elements N]
           [--states N] [--cost-min N] [--cost-max N] [--weight-min N]
           [--weight-max N] [--eps-a R] [--eps-b R] [--goal R] [-o FILE]

exit codes: 0 bounds hold, 1 property violation or bound not applicable,
            2 input error, 3 infeasible, 4 size cap exceeded
)";

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::cout << kUsage;
    return args.empty() ? 2 : 0;
  }
  return wcasc::run_cli(args, std::cout, std::cerr);
}
