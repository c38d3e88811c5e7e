#include <iostream>
#include <string>
#include <vector>

#include "dresplit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  try {
    const auto config = dresplit::cli::ParseConfig(args, std::cout);
    if (!config) return 0;
    return dresplit::cli::Run(*config, std::cout);
  } catch (const dresplit::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n(run with --help for options)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
