#include "report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace stabsel::cli {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json stopping_json(const StoppingRule& rule) {
  return json{{"relative_tol", optional_number(rule.relative_tol)},
              {"absolute_tol", optional_number(rule.absolute_tol)},
              {"max_iterations", rule.max_iterations}};
}

json ratio_json(const ApproximationRatioRow& row) {
  return json{{"label", row.label},
              {"worst_case", row.worst_case},
              {"random", row.random},
              {"selector_min", row.selector_min},
              {"selector_mean", row.selector_mean},
              {"selector_max", row.selector_max},
              {"min_iterations", row.min_iterations},
              {"trials", row.trials},
              {"censored", row.censored},
              {"all_failed", row.all_failed}};
}

std::string iteration_cell(Index iterations, bool converged) {
  return converged ? std::to_string(iterations) : std::string("---");
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

json sparse_report_json(const SparseExperimentResult& result, const SparseExperimentOptions& options) {
  json params{{"algorithm", to_string(options.algorithm)}};
  if (options.algorithm == SelectionAlgorithm::exhaustive) {
    params["k"] = options.k;
  } else {
    params["epsilon"] = options.epsilon;
    params["delta"] = options.delta;
  }
  params["trials"] = options.trials;
  params["seed"] = options.seed;
  params["stopping"] = stopping_json(options.rule);

  json candidates = json::array();
  for (std::size_t i = 0; i < result.solves.size(); ++i) {
    const auto& s = result.solves[i];
    candidates.push_back(json{{"label", s.label},
                              {"iterations", s.iterations},
                              {"converged", s.converged},
                              {"true_residual_norm", s.true_residual_norm},
                              {"preconditioner_applies", s.preconditioner_applies},
                              {"times_chosen", result.choice_counts.at(i)}});
  }
  json trials = json::array();
  for (const auto& t : result.trials) {
    trials.push_back(json{{"chosen", t.chosen}, {"spmv", t.spmv}, {"solves", t.solves}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"mode", "sparse"},
              {"matrix", json{{"label", result.label}, {"dim", result.dim}, {"nnz", result.nnz}}},
              {"parameters", params},
              {"candidates", candidates},
              {"ratios", ratio_json(result.ratios)},
              {"trials", trials}};
}

json kernel_report_json(const KernelExperimentResult& result, const KernelExperimentOptions& options) {
  json cells = json::array();
  for (const auto& cell : result.cells) {
    json candidates = json::array();
    for (const auto& c : cell.candidates) {
      json entry{{"label", c.label}, {"available", c.available}};
      if (c.failure) entry["failure"] = *c.failure;
      if (c.available) {
        entry["estimate"] = optional_number(c.estimate);
        entry["iterations"] = c.iterations;
        entry["converged"] = c.converged;
      }
      candidates.push_back(std::move(entry));
    }
    cells.push_back(json{{"length_scale", cell.length_scale},
                         {"noise", cell.noise},
                         {"chosen", cell.chosen_label()},
                         {"iters_none", cell.iters_none},
                         {"iters_blk", cell.iters_blk},
                         {"iters_lowrank", cell.iters_lowrank >= 0 ? json(cell.iters_lowrank) : json(nullptr)},
                         {"iters_selected", cell.iters_selected},
                         {"log10_ratio_blk", cell.log_ratio_blk},
                         {"log10_ratio_lowrank", optional_number(cell.log_ratio_lowrank)},
                         {"log10_ratio_selected", cell.log_ratio_selected},
                         {"selection_spmv", cell.selection_spmv},
                         {"selection_solves", cell.selection_solves},
                         {"candidates", candidates}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"mode", "kernel"},
              {"dataset", json{{"size", result.dim}, {"features", result.features}, {"clusters", result.clusters}}},
              {"parameters", json{{"rank", options.rank},
                                  {"k", options.k},
                                  {"seed", options.seed},
                                  {"absolute_tol_per_sqrt_dim", options.abs_tol_per_sqrt_dim},
                                  {"relative_tol", options.relative_tol},
                                  {"max_iterations", options.max_iterations}}},
              {"cells", cells}};
}

json estimate_report_json(const EstimateOutcome& outcome) {
  json j{{"schema_version", kSchemaVersion},
         {"mode", "estimate"},
         {"candidate", outcome.label},
         {"dim", outcome.dim},
         {"estimate", outcome.estimate.value},
         {"k", outcome.estimate.k},
         {"seed", outcome.estimate.seed},
         {"spmv_count", outcome.estimate.spmv_count},
         {"solve_count", outcome.estimate.solve_count},
         {"gaussian_draws", outcome.estimate.gaussian_draws}};
  if (outcome.exact) {
    j["exact"] = *outcome.exact;
    j["relative_error"] = optional_number(outcome.relative_error);
  }
  return j;
}

void write_iteration_csv(std::ostream& os, const SparseExperimentResult& result) {
  os << "candidate,iterations,converged,true_residual_norm,times_chosen\n";
  for (std::size_t i = 0; i < result.solves.size(); ++i) {
    const auto& s = result.solves[i];
    os << s.label << ',' << iteration_cell(s.iterations, s.converged) << ',' << (s.converged ? 1 : 0) << ','
       << std::setprecision(6) << s.true_residual_norm << ',' << result.choice_counts.at(i) << '\n';
  }
}

void write_ratio_csv(std::ostream& os, const ApproximationRatioRow& row) {
  os << "matrix,worst_case,random,selector_min,selector_mean,selector_max,trials,censored\n";
  os << row.label << ',' << fixed(row.worst_case, 2) << ',' << fixed(row.random, 2) << ','
     << fixed(row.selector_min, 2) << ',' << fixed(row.selector_mean, 2) << ',' << fixed(row.selector_max, 2) << ','
     << row.trials << ',' << (row.censored ? 1 : 0) << '\n';
}

void write_kernel_grid_csv(std::ostream& os, const KernelExperimentResult& result) {
  os << "length_scale,noise,iters_none,iters_blk,iters_lowrank,iters_selected,chosen,"
        "log10_ratio_blk,log10_ratio_lowrank,log10_ratio_selected\n";
  for (const auto& cell : result.cells) {
    const auto& c = cell.candidates;
    os << cell.length_scale << ',' << cell.noise << ',' << iteration_cell(cell.iters_none, c[0].converged) << ','
       << iteration_cell(cell.iters_blk, c[1].converged) << ','
       << (c[2].available ? iteration_cell(cell.iters_lowrank, c[2].converged) : std::string("n/a")) << ','
       << iteration_cell(cell.iters_selected, c[cell.chosen].converged) << ',' << cell.chosen_label() << ','
       << fixed(cell.log_ratio_blk, 2) << ','
       << (cell.log_ratio_lowrank ? fixed(*cell.log_ratio_lowrank, 2) : std::string("n/a")) << ','
       << fixed(cell.log_ratio_selected, 2) << '\n';
  }
}

void print_sparse_summary(std::ostream& os, const SparseExperimentResult& result) {
  os << result.label << ": d = " << result.dim << ", nnz = " << result.nnz << '\n';
  os << std::left << std::setw(12) << "candidate" << std::right << std::setw(12) << "iterations" << std::setw(10)
     << "chosen" << std::setw(12) << "setup [s]" << std::setw(12) << "solve [s]" << '\n';
  for (std::size_t i = 0; i < result.solves.size(); ++i) {
    const auto& s = result.solves[i];
    os << std::left << std::setw(12) << s.label << std::right << std::setw(12)
       << iteration_cell(s.iterations, s.converged) << std::setw(10) << result.choice_counts.at(i) << std::setw(12)
       << fixed(s.setup_seconds, 4) << std::setw(12) << fixed(s.solve_seconds, 4) << '\n';
  }
  const auto& r = result.ratios;
  os << "ratios: worst " << fixed(r.worst_case, 2) << ", random " << fixed(r.random, 2) << ", selector min/mean/max "
     << fixed(r.selector_min, 2) << " / " << fixed(r.selector_mean, 2) << " / " << fixed(r.selector_max, 2)
     << (r.censored ? " (censored: some candidate hit the cap)" : "") << '\n';
}

void print_kernel_summary(std::ostream& os, const KernelExperimentResult& result) {
  os << "kernel system: d = " << result.dim << ", p = " << result.features << ", clusters = " << result.clusters
     << '\n';
  os << std::right << std::setw(10) << "l" << std::setw(10) << "noise" << std::setw(8) << "none" << std::setw(8)
     << "blk" << std::setw(9) << "lowrank" << std::setw(9) << "chosen" << "  label\n";
  for (const auto& cell : result.cells) {
    os << std::setw(10) << cell.length_scale << std::setw(10) << cell.noise << std::setw(8) << cell.iters_none
       << std::setw(8) << cell.iters_blk << std::setw(9)
       << (cell.iters_lowrank >= 0 ? std::to_string(cell.iters_lowrank) : std::string("n/a")) << std::setw(9)
       << cell.iters_selected << "  " << cell.chosen_label() << '\n';
  }
}

void print_estimate_summary(std::ostream& os, const EstimateOutcome& outcome) {
  os << "candidate " << outcome.label << " (d = " << outcome.dim << ")\n";
  os << "S = " << std::setprecision(10) << outcome.estimate.value << "  k = " << outcome.estimate.k
     << "  seed = " << outcome.estimate.seed << "  spmv = " << outcome.estimate.spmv_count
     << "  solves = " << outcome.estimate.solve_count << '\n';
  if (outcome.exact) {
    os << "exact = " << *outcome.exact;
    if (outcome.relative_error) os << "  |S/exact - 1| = " << *outcome.relative_error;
    os << '\n';
  }
}

}  // namespace stabsel::cli
