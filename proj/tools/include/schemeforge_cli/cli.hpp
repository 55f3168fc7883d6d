#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace schemeforge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kSolverFailure = 3,
  kUnsupportedFamily = 4,
};

struct CliConfig {
  std::string subcommand;
  std::filesystem::path spec;
  std::filesystem::path out = "out";
  std::optional<std::string> scheme;
  std::optional<int> p;
  std::optional<double> h;
  std::optional<double> dt;
  std::optional<int> repeats;
  std::optional<int> threads;
  std::optional<int> worker_threshold;
  std::optional<double> multiscale_ratio;
};

int cmd_classify(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schemeforge::cli
