#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thmc::cli {

/// Process exit codes of the thmc tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // bad flags or invalid argument values
  kIngest = 2,        // unreadable or malformed input file
  kFitFailure = 3,    // MLE did not converge
  kDisconnected = 4,  // verify-basis found a disconnected fiber
  kBudget = 5,        // fiber enumeration hit its size or node budget
};

/// Runs one invocation; args exclude the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thmc::cli
