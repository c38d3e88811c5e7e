#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dresplit/cli.hpp"

namespace dresplit::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<int> ParseLadder(const std::string& key, const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--" + key + ": '" + item + "' is not an integer");
    }
  }
  if (values.empty()) throw UsageError("--" + key + ": empty ladder");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

bool IsPowerOfTwo(int v) { return v > 0 && (v & (v - 1)) == 0; }

void CheckNx(const std::string& key, int nx) {
  if (nx < 2 || nx % 2 != 0) {
    throw UsageError("--" + key + ": nx must be even and >= 2, got " + std::to_string(nx));
  }
}

}  // namespace

std::string CommandName(Command c) {
  switch (c) {
    case Command::kSolve: return "solve";
    case Command::kConvergence: return "convergence";
    case Command::kOracleCheck: return "oracle-check";
    case Command::kTransformCheck: return "transform-check";
  }
  return "?";
}

std::vector<std::string> ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path.string() + "'");
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = Trim(line.substr(0, eq));
    if (key.empty() || key == "config") {
      throw UsageError("--config: invalid key on line " + std::to_string(lineno));
    }
    args.push_back("--" + key);
    args.push_back(Trim(line.substr(eq + 1)));
  }
  return args;
}

std::optional<RunConfig> ParseConfig(const std::vector<std::string>& args, std::ostream& out) {
  // Config-file values go first so that later command-line flags win.
  std::vector<std::string> all;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      auto file_args = ReadConfigFile(args[i + 1]);
      all.insert(all.begin(), file_args.begin(), file_args.end());
      ++i;
    } else if (args[i].rfind("--config=", 0) == 0) {
      auto file_args = ReadConfigFile(args[i].substr(9));
      all.insert(all.begin(), file_args.begin(), file_args.end());
    } else {
      all.push_back(args[i]);
    }
  }

  RunConfig cfg;
  std::string command = "solve", nx_ladder, nt_ladder, coupling = "none", output = "out";
  std::optional<double> lambda;
  std::optional<int> ref_nx, ref_nt;

  CLI::App app{"Lie splitting solver for the finite element Riccati equation"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--command", command, "solve | convergence | oracle-check | transform-check");
  app.add_option("--nx", cfg.nx, "squares per direction (even)");
  app.add_option("--nx-ladder", nx_ladder, "comma-separated nx values");
  app.add_option("--nt", cfg.nt, "time steps");
  app.add_option("--nt-ladder", nt_ladder, "comma-separated powers of two");
  app.add_option("--T", cfg.horizon, "time horizon");
  app.add_option("--lambda", lambda, "stabilizing shift (default 0, 1 for transform-check)");
  app.add_option("--xi", cfg.xi_name, "control profile from the field catalog");
  app.add_option("--zeta", cfg.zeta_name, "initial-value factor from the field catalog");
  app.add_option("--xi-amp", cfg.xi_amplitude, "amplitude of xi");
  app.add_option("--zeta-amp", cfg.zeta_amplitude, "amplitude of zeta");
  app.add_option("--coupling", coupling, "none | tau-h2 (tau = h^2)");
  app.add_option("--ref-nx", ref_nx, "reference nx (default: finest)");
  app.add_option("--ref-nt", ref_nt, "reference nt (default: finest)");
  app.add_option("--out", output, "output directory");

  std::vector<std::string> reversed(all.rbegin(), all.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (command == "solve") cfg.command = Command::kSolve;
  else if (command == "convergence") cfg.command = Command::kConvergence;
  else if (command == "oracle-check") cfg.command = Command::kOracleCheck;
  else if (command == "transform-check") cfg.command = Command::kTransformCheck;
  else throw UsageError("--command: unknown command '" + command + "'");

  CheckNx("nx", cfg.nx);
  if (cfg.nt < 1) throw UsageError("--nt: must be >= 1");
  if (!nx_ladder.empty()) cfg.nx_ladder = ParseLadder("nx-ladder", nx_ladder);
  for (int nx : cfg.nx_ladder) CheckNx("nx-ladder", nx);
  if (!nt_ladder.empty()) cfg.nt_ladder = ParseLadder("nt-ladder", nt_ladder);
  for (int nt : cfg.nt_ladder) {
    if (!IsPowerOfTwo(nt)) {
      throw UsageError("--nt-ladder: " + std::to_string(nt) + " is not a power of two");
    }
  }
  if (!(cfg.horizon > 0) || !std::isfinite(cfg.horizon)) throw UsageError("--T: must be > 0");

  cfg.lambda = lambda.value_or(cfg.command == Command::kTransformCheck ? 1.0 : 0.0);
  if (!(cfg.lambda >= 0) || !std::isfinite(cfg.lambda)) throw UsageError("--lambda: must be >= 0");
  if (cfg.command == Command::kTransformCheck && cfg.lambda == 0) {
    throw UsageError("--lambda: transform-check needs lambda > 0");
  }

  for (const auto& [key, name] : {std::pair{"xi", cfg.xi_name}, std::pair{"zeta", cfg.zeta_name}}) {
    const auto names = fem::FieldNames();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw UsageError(std::string("--") + key + ": unknown field '" + name + "'");
    }
  }

  if (coupling == "none") cfg.coupling = lab::Coupling::kNone;
  else if (coupling == "tau-h2" || coupling == "tau-equals-h-squared")
    cfg.coupling = lab::Coupling::kTauEqualsHSquared;
  else throw UsageError("--coupling: unknown coupling '" + coupling + "'");

  if (ref_nx) CheckNx("ref-nx", *ref_nx);
  if (ref_nt && *ref_nt < 1) throw UsageError("--ref-nt: must be >= 1");
  cfg.ref_nx = ref_nx;
  cfg.ref_nt = ref_nt;
  cfg.output_dir = output;
  return cfg;
}

}  // namespace dresplit::cli
