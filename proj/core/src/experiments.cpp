#include "stabsel/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>

#include "stabsel/parallel.hpp"

namespace stabsel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double log10_ratio(Index iterations, Index baseline) {
  return std::log10(static_cast<double>(std::max<Index>(iterations, 1)) /
                    static_cast<double>(std::max<Index>(baseline, 1)));
}

}  // namespace

ApproximationRatioRow approximation_ratios(std::string label, const std::vector<CandidateSolve>& solves,
                                           const std::vector<std::size_t>& chosen) {
  if (solves.empty()) throw ArgumentError("approximation_ratios: no candidates");
  ApproximationRatioRow row;
  row.label = std::move(label);
  row.trials = chosen.size();
  std::vector<double> iters;
  bool any_converged = false;
  for (const auto& s : solves) {
    iters.push_back(static_cast<double>(std::max<Index>(s.iterations, 1)));
    row.censored = row.censored || !s.converged;
    any_converged = any_converged || s.converged;
  }
  row.all_failed = !any_converged;
  const double lo = *std::min_element(iters.begin(), iters.end());
  row.min_iterations = static_cast<Index>(lo);
  row.worst_case = *std::max_element(iters.begin(), iters.end()) / lo;
  row.random = std::accumulate(iters.begin(), iters.end(), 0.0) / static_cast<double>(iters.size()) / lo;
  if (!chosen.empty()) {
    row.selector_min = std::numeric_limits<double>::infinity();
    row.selector_max = 0.0;
    double sum = 0.0;
    for (std::size_t c : chosen) {
      const double r = iters.at(c) / lo;
      row.selector_min = std::min(row.selector_min, r);
      row.selector_max = std::max(row.selector_max, r);
      sum += r;
    }
    row.selector_mean = sum / static_cast<double>(chosen.size());
  }
  return row;
}

SparseExperimentResult run_sparse_experiment(const SparseMatrixCSR& a, std::string label,
                                             const SparseExperimentOptions& options) {
  if (options.candidates.empty()) throw ArgumentError("run_sparse_experiment: no candidates");
  if (options.trials < 1) throw ArgumentError("run_sparse_experiment: trials must be >= 1");
  options.rule.validate();
  const RandomStream root(options.seed);
  const SparseOperator op(a);

  SparseExperimentResult result;
  result.label = label;
  result.dim = a.dim();
  result.nnz = a.nnz();

  const std::size_t n = options.candidates.size();
  std::vector<std::unique_ptr<Preconditioner>> owned(n);
  result.solves.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto start = Clock::now();
    owned[i] = build_candidate(a, options.candidates[i]);
    result.solves[i].label = owned[i]->label();
    result.solves[i].setup_seconds = seconds_since(start);
  }

  RandomStream rhs_stream = root.substream(0);
  const Vector b = gaussian_vector(a.dim(), rhs_stream);
  parallel_for(n, options.threads, [&](std::size_t i) {
    const auto start = Clock::now();
    const SolveResult s = pcg_solve(op, *owned[i], b, options.rule);
    auto& out = result.solves[i];
    out.iterations = s.iterations;
    out.converged = s.converged;
    out.true_residual_norm = s.true_residual_norm;
    out.preconditioner_applies = s.preconditioner_applies;
    out.solve_seconds = seconds_since(start);
  });

  const auto view = candidate_view(owned);
  const RandomStream trial_root = root.substream(1);
  result.trials.resize(options.trials);
  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    RandomStream rng = trial_root.substream(t);
    const SelectionReport report = options.algorithm == SelectionAlgorithm::adaptive
                                       ? adaptive_select(op, view, options.epsilon, options.delta, rng)
                                       : select_preconditioner(op, view, options.k, rng);
    result.trials[t] = SelectionTrial{report.chosen_index, report.total_spmv, report.total_solves};
  });

  result.choice_counts.assign(n, 0);
  std::vector<std::size_t> chosen;
  chosen.reserve(options.trials);
  for (const auto& t : result.trials) {
    ++result.choice_counts[t.chosen];
    chosen.push_back(t.chosen);
  }
  result.ratios = approximation_ratios(std::move(label), result.solves, chosen);
  return result;
}

KernelCell kernel_cell(const Dataset& data, const Clustering& clustering, double length_scale, double noise,
                       const KernelExperimentOptions& options, RandomStream rng) {
  KernelCell cell;
  cell.length_scale = length_scale;
  cell.noise = noise;
  const KernelSystem system = make_kernel_system(data, length_scale, noise);
  const DenseShiftedOperator op(system.gram, system.noise);

  std::vector<std::unique_ptr<Preconditioner>> owned;
  cell.candidates.resize(3);
  auto timed = [](auto&& build, KernelCandidateOutcome& out) {
    const auto start = Clock::now();
    auto m = build();
    out.setup_seconds = seconds_since(start);
    out.label = m->label();
    return m;
  };
  owned.push_back(timed([&] { return std::make_unique<IdentityPreconditioner>(system.dim()); }, cell.candidates[0]));
  owned.push_back(timed(
      [&] { return std::make_unique<GeometricPreconditioner>(geometric_block_precond(system, clustering)); },
      cell.candidates[1]));
  cell.candidates[2].label = "geo-lowrank-" + std::to_string(options.rank);
  try {
    RandomStream lowrank_rng = rng.substream(0);
    owned.push_back(timed(
        [&] {
          return std::make_unique<GeometricPreconditioner>(
              geometric_lowrank_precond(system, clustering, options.rank, lowrank_rng));
        },
        cell.candidates[2]));
  } catch (const NumericalError& e) {
    cell.candidates[2].available = false;
    cell.candidates[2].failure = e.what();
  }

  const auto view = candidate_view(owned);
  RandomStream select_rng = rng.substream(1);
  const SelectionReport report = select_preconditioner(op, view, options.k, select_rng);
  cell.chosen = report.chosen_index;
  cell.selection_spmv = report.total_spmv;
  cell.selection_solves = report.total_solves;

  StoppingRule rule;
  rule.relative_tol = options.relative_tol;
  rule.absolute_tol = options.abs_tol_per_sqrt_dim * std::sqrt(static_cast<double>(system.dim()));
  rule.max_iterations = options.max_iterations;
  for (std::size_t i = 0; i < owned.size(); ++i) {
    auto& out = cell.candidates[i];
    out.estimate = report.estimates[i];
    const auto start = Clock::now();
    const SolveResult s = pcg_solve(op, *owned[i], data.targets, rule);
    out.solve_seconds = seconds_since(start);
    out.iterations = s.iterations;
    out.converged = s.converged;
  }

  cell.iters_none = cell.candidates[0].iterations;
  cell.iters_blk = cell.candidates[1].iterations;
  cell.iters_lowrank = cell.candidates[2].available ? cell.candidates[2].iterations : -1;
  cell.iters_selected = cell.candidates[cell.chosen].iterations;
  cell.log_ratio_blk = log10_ratio(cell.iters_blk, cell.iters_none);
  if (cell.candidates[2].available) cell.log_ratio_lowrank = log10_ratio(cell.iters_lowrank, cell.iters_none);
  cell.log_ratio_selected = log10_ratio(cell.iters_selected, cell.iters_none);
  return cell;
}

KernelExperimentResult run_kernel_experiment(const Dataset& data, const KernelExperimentOptions& options) {
  data.validate();
  if (options.length_scales.empty() || options.noises.empty()) {
    throw ArgumentError("run_kernel_experiment: empty parameter grid");
  }
  if (options.k < 1) throw ArgumentError("run_kernel_experiment: k must be >= 1");
  const RandomStream root(options.seed);
  RandomStream cluster_rng = root.substream(1);
  const Index c = options.clusters > 0 ? options.clusters : default_cluster_count(data.size());
  const Clustering clustering = kmeans_cluster(data.points, c, cluster_rng);

  KernelExperimentResult result;
  result.dim = data.size();
  result.features = data.features();
  result.clusters = clustering.cluster_count();
  const std::size_t cols = options.noises.size();
  result.cells.resize(options.length_scales.size() * cols);
  const RandomStream cell_root = root.substream(2);
  parallel_for(result.cells.size(), options.threads, [&](std::size_t i) {
    result.cells[i] = kernel_cell(data, clustering, options.length_scales[i / cols], options.noises[i % cols],
                                  options, cell_root.substream(i));
  });
  return result;
}

EstimateOutcome run_estimate(const SparseMatrixCSR& a, const CandidateSpec& candidate, Index k, std::uint64_t seed,
                             bool with_exact) {
  const auto m = build_candidate(a, candidate);
  RandomStream rng(seed);
  EstimateOutcome out;
  out.label = m->label();
  out.dim = a.dim();
  out.estimate = stab_estimate(a, *m, k, rng);
  if (with_exact) {
    out.exact = exact_stability(a, *m);
    if (*out.exact > 0.0) out.relative_error = std::abs(out.estimate.value / *out.exact - 1.0);
  }
  return out;
}

}  // namespace stabsel
