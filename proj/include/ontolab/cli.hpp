#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ontolab::cli {

enum ExitCode : int { kHolds = 0, kFails = 1, kInputError = 2 };

/// Runs the command line. Exit codes: 0 the check holds, 1 it fails (a
/// witness is printed), 2 the input could not be used.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `ontolab check <file> <check>`.
const std::vector<std::string>& check_names();

}  // namespace ontolab::cli
