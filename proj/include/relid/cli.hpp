#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relid::cli {

  // Exit codes.
  inline constexpr int ok             = 0;
  inline constexpr int failed         = 1;  // check failed, terms not found
  inline constexpr int usage          = 2;  // parse and input errors
  inline constexpr int cap            = 3;
  inline constexpr int assert_failure = 4;  // counterexample with --assert-holds

  // Runs the command line (without the program name). The report goes to
  // `out` only when the command completes; errors go to `err`.
  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err);

}  // namespace relid::cli
