#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qgauge/report.hpp"
#include "qgauge/scenario.hpp"

namespace qgauge::cli {

enum ExitCode : int {
  kPass = 0,
  kToleranceFailure = 1,
  kUsageError = 2,
  kNumericFailure = 3,
};

// Files produced by one command, keyed by file name. Nothing touches the disk
// until commit().
struct Artifacts {
  std::map<std::string, std::string> files;

  // Writes every file to a temporary name in `dir`, then renames into place.
  void commit(const std::filesystem::path& dir) const;
};

struct CommandResult {
  Report report;
  Artifacts artifacts;
};

CommandResult cmd_map(const Scenario& sc);
CommandResult cmd_evolve(const Scenario& sc);
CommandResult cmd_circuit(const Scenario& sc);
CommandResult cmd_verify(const Scenario& sc);

// Full command-line entry point: `qgauge <map|evolve|circuit|verify> --config
// <path> --out <dir> [--seed <u64>] [--steps <n>]`. Returns the exit code.
int run(const std::vector<std::string>& args);

}  // namespace qgauge::cli
