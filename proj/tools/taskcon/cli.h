/// @file cli.h
/// The `taskcon` command line, callable in-process.
#ifndef TASKCON_TOOLS_CLI_H_
#define TASKCON_TOOLS_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace taskcon::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitClean = 0,
  kExitFindings = 1,
  kExitFailure = 2,
};

struct Environment {
  std::ostream& out;  // artifacts
  std::ostream& err;  // diagnostics and messages
  std::filesystem::path cwd = std::filesystem::current_path();
  bool color = false;
};

/// `args` excludes the program name.
int Run(const std::vector<std::string>& args, Environment& env);

/// Contents written by `taskcon init`.
std::string SkeletonModel();

}  // namespace taskcon::cli

#endif  // TASKCON_TOOLS_CLI_H_
