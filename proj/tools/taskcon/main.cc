/// @file main.cc
#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  taskcon::cli::Environment env{std::cout, std::cerr};
  env.color = isatty(STDERR_FILENO) && std::getenv("TASKCON_NO_COLOR") == nullptr;
  return taskcon::cli::Run(args, env);
}
