#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ek3 {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  OutputFormat format = OutputFormat::csv;
  unsigned jobs = 1;
  int verbosity = 0;

  // subcommand flags
  bool n2 = false;
  std::optional<int> rank;
  bool sl2 = false;
  std::optional<std::string> computed;
};

enum ExitCode : int { exit_ok = 0, exit_diff = 1, exit_usage = 2 };

/// Runs one subcommand. Output is deterministic for any `jobs`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line into a RunConfig and runs it.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default worker count: EK3_JOBS if set, else the number of hardware threads.
unsigned default_jobs();

/// Resolves a shipped data file: the path itself if it exists, else the
/// same name under the installed data directory.
std::string resolve_data_path(const std::string& path);

}  // namespace ek3
