#pragma once

// Command-line front end: configuration parsing and the four commands.

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dresplit/lab.hpp"

namespace dresplit::cli {

enum class Command { kSolve, kConvergence, kOracleCheck, kTransformCheck };

/// Invalid command line or config file; the message names the offending key.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::kSolve;
  int nx = 8;
  std::vector<int> nx_ladder = {2, 4, 8};
  int nt = 64;
  std::vector<int> nt_ladder = {2, 4, 8, 16, 32, 64};
  double horizon = 1;
  double lambda = 0;
  std::string xi_name = "default-xi";
  std::string zeta_name = "default-zeta";
  double xi_amplitude = 1;
  double zeta_amplitude = 1;
  lab::Coupling coupling = lab::Coupling::kNone;
  std::optional<int> ref_nx;
  std::optional<int> ref_nt;
  std::filesystem::path output_dir = "out";
};

std::string CommandName(Command c);

/// Parses flags (argv[0] is skipped) and an optional `--config` file of
/// flat key=value lines using the flag names without dashes. Flags
/// override file values. Throws UsageError.
/// Returns std::nullopt after printing help when --help is given.
std::optional<RunConfig> ParseConfig(const std::vector<std::string>& args, std::ostream& out);

/// Reads a key=value file into flag form ("--key", "value", ...).
std::vector<std::string> ReadConfigFile(const std::filesystem::path& path);

/// Executes the configured command and writes its artifacts under
/// config.output_dir. Returns the process exit status.
int Run(const RunConfig& config, std::ostream& out);

/// errors.csv body: comment header then one row per entry, doubles in
/// 17-significant-digit scientific notation.
std::string FormatErrorsCsv(const lab::ConvergenceReport& report);
std::string FormatOrders(const lab::ConvergenceReport& report);

}  // namespace dresplit::cli
