// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "help") {
    std::cout << rklab::cli::usage();
    return args.empty() ? 2 : 0;
  }
  try {
    const auto cfg = rklab::cli::parse_args(args);
    return rklab::cli::execute(cfg);
  } catch (const rklab::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << rklab::cli::usage();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
