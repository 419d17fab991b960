#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabsel/experiments.hpp"

namespace stabsel::cli {

enum class Mode { sparse, kernel, estimate };

std::string to_string(Mode mode);

/// Everything one run needs. Filled from an optional config file (INI/TOML
/// key = value) and overridden by flags of the same name.
struct ExperimentConfig {
  Mode mode = Mode::sparse;

  // System source: exactly one of these per mode.
  std::optional<std::filesystem::path> matrix;
  std::optional<std::string> generator;
  std::optional<std::filesystem::path> dataset;
  std::optional<std::string> dataset_generator;
  std::string target = "y";

  std::vector<std::string> candidates{"I", "blk:1", "blk:10", "blk:25", "rcm:25"};

  SelectionAlgorithm algorithm = SelectionAlgorithm::exhaustive;
  Index k = 10;
  double epsilon = 0.25;
  double delta = 0.1;

  std::optional<double> relative_tol = 1e-9;
  std::optional<double> absolute_tol;
  Index max_iterations = 50000;

  // Kernel grid.
  std::vector<double> length_scales{1e-2, 1e-1, 1.0, 10.0};
  std::vector<double> noises{1e-2, 1e-4};
  Index rank = 25;
  Index clusters = 0;
  double kernel_abs_tol = 1e-5;
  double kernel_rel_tol = 1e-15;
  Index kernel_max_iterations = 10000;

  std::size_t trials = 100;
  std::uint64_t seed = 0;
  bool exact = false;
  unsigned threads = 1;
  std::optional<std::filesystem::path> out;

  /// Throws ConfigError when a mode-required field is missing or a value is
  /// out of range.
  void validate() const;
};

/// Parses argv into a config. Returns std::nullopt after printing help or
/// version text (exit 0). Throws ConfigError on bad flags or config files.
std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

/// Runs the configured mode, printing a summary to `out` and writing reports
/// under `config.out` when set.
void run(const ExperimentConfig& config, std::ostream& out);

/// Full entry point with exit codes: 0 success, 1 configuration or input
/// error, 2 numerical failure.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stabsel::cli
