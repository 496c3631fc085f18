#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paralab {

// Command line driver.  `args` excludes the program name.
//
// Subcommands:
//   list                              gallery chart names and descriptions
//   validate <file>                   check a manifest file
//   classify <name|file> [--points N] [--seed S] [--tol T] [--json] [--assert]
//   identities <name|file> [--suite S] [--json]
//   curvature <name|file> --at v1,v2,... [--json]
//
// Exit codes: 0 success; 1 an --assert check failed (an expected property
// status was violated or the implication audit is nonempty); 2 usage or
// manifest error; 3 numeric degeneracy while evaluating.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paralab
