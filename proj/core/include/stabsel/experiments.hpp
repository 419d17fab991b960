#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabsel/kernel.hpp"
#include "stabsel/krylov.hpp"
#include "stabsel/selection.hpp"

namespace stabsel {

/// PCG outcome for one candidate on the experiment's fixed right-hand side.
struct CandidateSolve {
  std::string label;
  Index iterations = 0;
  bool converged = false;
  double true_residual_norm = 0.0;
  std::size_t preconditioner_applies = 0;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Iterations of the selected candidate relative to the best candidate.
struct ApproximationRatioRow {
  std::string label;
  double worst_case = 1.0;     ///< max iterations / min iterations
  double random = 1.0;         ///< mean iterations / min iterations (uniform choice)
  double selector_min = 1.0;
  double selector_mean = 1.0;
  double selector_max = 1.0;
  Index min_iterations = 0;
  std::size_t trials = 0;
  /// Some candidate hit the iteration cap; its count enters the ratios as the
  /// cap, so worst_case and random are lower bounds.
  bool censored = false;
  /// No candidate converged.
  bool all_failed = false;
};

/// Ratio row from per-candidate iteration counts (non-converged entries hold
/// the cap) and the candidate chosen in each trial.
ApproximationRatioRow approximation_ratios(std::string label, const std::vector<CandidateSolve>& solves,
                                           const std::vector<std::size_t>& chosen);

struct SparseExperimentOptions {
  std::vector<CandidateSpec> candidates;
  SelectionAlgorithm algorithm = SelectionAlgorithm::exhaustive;
  Index k = 10;
  double epsilon = 0.25;
  double delta = 0.1;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  StoppingRule rule{};
  unsigned threads = 1;
};

struct SelectionTrial {
  std::size_t chosen = 0;
  std::size_t spmv = 0;
  std::size_t solves = 0;
};

struct SparseExperimentResult {
  std::string label;
  Index dim = 0;
  Index nnz = 0;
  std::vector<CandidateSolve> solves;
  std::vector<SelectionTrial> trials;
  std::vector<std::size_t> choice_counts;
  ApproximationRatioRow ratios;
};

/// Draws one b ~ N(0, I) from the seed, solves with every candidate, then runs
/// the selector for `trials` independent trials (trial t uses a stream derived
/// from the seed and t only).
SparseExperimentResult run_sparse_experiment(const SparseMatrixCSR& a, std::string label,
                                             const SparseExperimentOptions& options);

struct KernelExperimentOptions {
  std::vector<double> length_scales;
  std::vector<double> noises;
  Index rank = 25;
  Index k = 10;
  Index clusters = 0;  ///< 0 means ceil(sqrt(d))
  std::uint64_t seed = 0;
  /// Absolute tolerance is abs_tol_per_sqrt_dim * sqrt(d).
  double abs_tol_per_sqrt_dim = 1e-5;
  double relative_tol = 1e-15;
  Index max_iterations = 10000;
  unsigned threads = 1;
};

struct KernelCandidateOutcome {
  std::string label;
  bool available = true;           ///< false when construction failed
  std::optional<std::string> failure;
  std::optional<double> estimate;  ///< stability estimate used by the selector
  Index iterations = 0;
  bool converged = false;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// One (length scale, noise) cell: candidates are identity, geometric block
/// and geometric low-rank, in that order.
struct KernelCell {
  double length_scale = 0.0;
  double noise = 0.0;
  std::vector<KernelCandidateOutcome> candidates;
  std::size_t chosen = 0;
  Index iters_none = 0;
  Index iters_blk = 0;
  Index iters_lowrank = 0;  ///< -1 when the low-rank candidate failed to build
  Index iters_selected = 0;
  double log_ratio_blk = 0.0;
  std::optional<double> log_ratio_lowrank;
  double log_ratio_selected = 0.0;
  std::size_t selection_spmv = 0;
  std::size_t selection_solves = 0;

  const std::string& chosen_label() const { return candidates.at(chosen).label; }
};

struct KernelExperimentResult {
  Index dim = 0;
  Index features = 0;
  Index clusters = 0;
  std::vector<KernelCell> cells;  ///< length-scale major
};

/// Clusters the data once, then for every grid cell builds the system and the
/// three candidates, selects among them with the exhaustive rule at k, and
/// solves with each candidate.
KernelExperimentResult run_kernel_experiment(const Dataset& data, const KernelExperimentOptions& options);

/// Builds one kernel cell against a given clustering (exposed for tests).
KernelCell kernel_cell(const Dataset& data, const Clustering& clustering, double length_scale, double noise,
                       const KernelExperimentOptions& options, RandomStream rng);

struct EstimateOutcome {
  std::string label;
  Index dim = 0;
  StabilityEstimate estimate;
  std::optional<double> exact;
  std::optional<double> relative_error;  ///< |S / exact - 1| when exact > 0
};

/// One stability estimate for a single candidate, optionally with the exact
/// value.
EstimateOutcome run_estimate(const SparseMatrixCSR& a, const CandidateSpec& candidate, Index k,
                             std::uint64_t seed, bool with_exact);

}  // namespace stabsel
