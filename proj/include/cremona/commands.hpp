#pragma once

#include <string>

#include "cremona/error.hpp"
#include "cremona/json_io.hpp"

namespace cremona {

struct CommandResult {
  Json output;
  int exit_code = 0;  // 0 success, 1 check failure, 2 usage or parse error
  std::string text;   // human-readable rendering of output
};

/// Dispatches one command-line verb. input is the JSON document read by the
/// caller (null when none); options carries flag values such as "n", "cap",
/// "f", "order", "rank", "bounds", "id", "threads" and "fixtures".
CommandResult run_command(const std::string& name, const Json& input, const Json& options);

/// Exit code for a failure of the given kind.
int exit_code_for(ErrorKind kind);

}  // namespace cremona
