#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace domainwall::cli {

enum ExitCode : int {
  kSuccess = 0,
  kSolverFailure = 1,
  kValidationFailure = 2,
  kUsage = 64,
};

/// Relative output paths are resolved against this directory when it is set.
inline constexpr const char* kOutputDirEnv = "DOMAINWALL_OUTPUT_DIR";

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;  // solve | reduced | validate | sweep | spectrum
  double lambda = 1.0;
  std::optional<double> eps;
  std::optional<double> coupling;
  std::optional<double> half_length;
  std::optional<std::size_t> n;
  std::optional<double> tol;
  std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05};
  std::string side = "left";
  std::filesystem::path out;
  std::filesystem::path report;
  std::filesystem::path in;
  std::filesystem::path out_dir;
  Format format = Format::Csv;
  std::size_t jobs = 0;  // 0 = hardware concurrency
};

/// Flag parsing stopped: help was requested (exit_code 0) or the flags were invalid.
struct ParseStop {
  int exit_code;
  std::string message;
};

/// Parses argv into a RunConfig; throws ParseStop for help and bad flags.
RunConfig parse(int argc, const char* const* argv);

/// Executes a parsed configuration; diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run with exit-code mapping for usage errors.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace domainwall::cli
