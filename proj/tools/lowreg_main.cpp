#include <iostream>
#include <string>
#include <vector>

#include "lowreg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const lowreg::ParseResult parsed = lowreg::parse_invocation(args);
    if (parsed.help) {
      std::cout << parsed.help_text;
      return lowreg::kExitOk;
    }
    return lowreg::dispatch(parsed.invocation);
  } catch (const lowreg::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run 'lowreg --help' for usage\n";
    return lowreg::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lowreg::kExitUsage;
  }
}
