#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "stabsel/experiments.hpp"

namespace stabsel::cli {

inline constexpr int kSchemaVersion = 1;

/// Reports leave out wall-clock timings so that a fixed config and seed give
/// byte-identical files.
nlohmann::ordered_json sparse_report_json(const SparseExperimentResult& result, const SparseExperimentOptions& options);
nlohmann::ordered_json kernel_report_json(const KernelExperimentResult& result, const KernelExperimentOptions& options);
nlohmann::ordered_json estimate_report_json(const EstimateOutcome& outcome);

/// Iteration table, "---" for runs that hit the cap.
void write_iteration_csv(std::ostream& os, const SparseExperimentResult& result);
void write_ratio_csv(std::ostream& os, const ApproximationRatioRow& row);
void write_kernel_grid_csv(std::ostream& os, const KernelExperimentResult& result);

/// Human-readable tables including timings.
void print_sparse_summary(std::ostream& os, const SparseExperimentResult& result);
void print_kernel_summary(std::ostream& os, const KernelExperimentResult& result);
void print_estimate_summary(std::ostream& os, const EstimateOutcome& outcome);

}  // namespace stabsel::cli
