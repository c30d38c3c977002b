#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowreg/harness.hpp"

namespace lowreg {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitUnresolved = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Command { Run, Converge, Selftest };

struct CliInvocation {
  Command command = Command::Selftest;
  ExperimentConfig experiment;
  // run command
  double run_tau = 0.0;   // 0 = not set
  int run_steps = 0;      // 0 = derive from T/tau
  std::string dump_path;  // empty = no state dump
  // output
  std::string out_dir;    // empty = LOWREG_OUTPUT_DIR or "."
  bool dealias = false;
};

struct ParseResult {
  bool help = false;
  std::string help_text;
  CliInvocation invocation;
};

/// Parse argv (without the program name). Flags override config-file values;
/// unknown flags and malformed values throw UsageError.
ParseResult parse_invocation(const std::vector<std::string>& argv);

/// Execute a parsed invocation; returns one of the kExit* codes.
int dispatch(const CliInvocation& inv);

/// Flat key=value config file with '#' comments.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// "1/16" or "0.0625" -> double.
double parse_ratio(const std::string& text);

std::string cli_help_text();
std::vector<std::string> cli_flag_names();

} // namespace lowreg
