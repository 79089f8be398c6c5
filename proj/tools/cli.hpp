#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pseudospin::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,       //!< solver failure or failed mandatory check
  kMissingState = 2,  //!< a requested state has no certified root
  kUsage = 64,        //!< bad flags, configuration or parameters
};

//! Runs one invocation. `args` excludes the program name. Artifacts go to
//! `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudospin::cli
