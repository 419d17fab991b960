#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "report.hpp"
#include "stabsel/matrix_market.hpp"
#include "stabsel/synthetic.hpp"

namespace stabsel::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os << text;
}

template <class Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

SparseMatrixCSR load_matrix(const ExperimentConfig& config, std::string& label) {
  if (config.matrix) {
    label = config.matrix->stem().string();
    return read_matrix_market(*config.matrix);
  }
  label = *config.generator;
  return generate_matrix(*config.generator, config.seed);
}

StoppingRule sparse_rule(const ExperimentConfig& config) {
  StoppingRule rule;
  rule.relative_tol = config.relative_tol;
  rule.absolute_tol = config.absolute_tol;
  rule.max_iterations = config.max_iterations;
  return rule;
}

void run_sparse(const ExperimentConfig& config, std::ostream& out) {
  std::string label;
  const SparseMatrixCSR a = load_matrix(config, label);
  SparseExperimentOptions options;
  for (const auto& c : config.candidates) options.candidates.push_back(CandidateSpec::parse(c));
  options.algorithm = config.algorithm;
  options.k = config.k;
  options.epsilon = config.epsilon;
  options.delta = config.delta;
  options.trials = config.trials;
  options.seed = config.seed;
  options.rule = sparse_rule(config);
  options.threads = config.threads;

  const SparseExperimentResult result = run_sparse_experiment(a, label, options);
  print_sparse_summary(out, result);
  if (config.out) {
    std::filesystem::create_directories(*config.out);
    write_file(*config.out / "report.json", sparse_report_json(result, options).dump(2) + "\n");
    write_file(*config.out / "iterations.csv", render([&](std::ostream& os) { write_iteration_csv(os, result); }));
    write_file(*config.out / "ratios.csv", render([&](std::ostream& os) { write_ratio_csv(os, result.ratios); }));
  }
}

void run_kernel(const ExperimentConfig& config, std::ostream& out) {
  const Dataset data = config.dataset ? read_csv_dataset(*config.dataset, config.target)
                                      : generate_dataset(*config.dataset_generator, config.seed);
  KernelExperimentOptions options;
  options.length_scales = config.length_scales;
  options.noises = config.noises;
  options.rank = config.rank;
  options.k = config.k;
  options.clusters = config.clusters;
  options.seed = config.seed;
  options.abs_tol_per_sqrt_dim = config.kernel_abs_tol;
  options.relative_tol = config.kernel_rel_tol;
  options.max_iterations = config.kernel_max_iterations;
  options.threads = config.threads;
  if (options.rank >= data.size()) throw ConfigError("rank must be smaller than the number of points");

  const KernelExperimentResult result = run_kernel_experiment(data, options);
  print_kernel_summary(out, result);
  if (config.out) {
    std::filesystem::create_directories(*config.out);
    write_file(*config.out / "report.json", kernel_report_json(result, options).dump(2) + "\n");
    write_file(*config.out / "grid.csv", render([&](std::ostream& os) { write_kernel_grid_csv(os, result); }));
  }
}

void run_estimate_mode(const ExperimentConfig& config, std::ostream& out) {
  std::string label;
  const SparseMatrixCSR a = load_matrix(config, label);
  const EstimateOutcome outcome =
      run_estimate(a, CandidateSpec::parse(config.candidates.front()), config.k, config.seed, config.exact);
  print_estimate_summary(out, outcome);
  if (config.out) {
    std::filesystem::create_directories(*config.out);
    write_file(*config.out / "report.json", estimate_report_json(outcome).dump(2) + "\n");
  }
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::sparse: return "sparse";
    case Mode::kernel: return "kernel";
    case Mode::estimate: return "estimate";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (trials < 1) fail("trials must be >= 1");
  if (k < 1) fail("k must be >= 1");

  if (mode == Mode::kernel) {
    if (dataset.has_value() == dataset_generator.has_value()) {
      fail("kernel mode needs exactly one of --dataset or --dataset-generator");
    }
    if (length_scales.empty() || noises.empty()) fail("kernel mode needs non-empty --length-scales and --noises");
    for (double l : length_scales) {
      if (!(l > 0.0) || !std::isfinite(l)) fail("length scales must be positive");
    }
    for (double s : noises) {
      if (!(s > 0.0) || !std::isfinite(s)) fail("noise variances must be positive");
    }
    if (rank < 0) fail("rank must be >= 0");
    if (clusters < 0) fail("clusters must be >= 0");
    if (!(kernel_abs_tol > 0.0) || !(kernel_rel_tol > 0.0)) fail("kernel tolerances must be positive");
    if (kernel_max_iterations < 1) fail("kernel max iterations must be >= 1");
    return;
  }

  if (matrix.has_value() == generator.has_value()) fail(to_string(mode) + " mode needs exactly one of --matrix or --generator");
  if (candidates.empty()) fail("candidate list is empty");
  for (const auto& c : candidates) CandidateSpec::parse(c);
  if (mode == Mode::estimate) {
    if (candidates.size() != 1) fail("estimate mode needs exactly one candidate");
    return;
  }
  if (algorithm == SelectionAlgorithm::adaptive) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) fail("epsilon must lie in (0, 1/2) for alg3");
    if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
  }
  try {
    sparse_rule(*this).validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
  ExperimentConfig c;
  CLI::App app{"Preconditioner stability estimation and selection"};
  app.set_config("--config", "", "INI or TOML file with option = value lines");
  app.set_version_flag("--version", "0.1.0");

  const std::map<std::string, Mode> modes{{"sparse", Mode::sparse}, {"kernel", Mode::kernel}, {"estimate", Mode::estimate}};
  const std::map<std::string, SelectionAlgorithm> algorithms{{"alg2", SelectionAlgorithm::exhaustive},
                                                             {"alg3", SelectionAlgorithm::adaptive}};
  std::string matrix, dataset, out_dir;
  std::string generator, dataset_generator;
  double relative_tol = -1.0, absolute_tol = -1.0;

  app.add_option("--mode", c.mode, "sparse, kernel or estimate")->transform(CLI::CheckedTransformer(modes));
  app.add_option("--matrix", matrix, "Matrix Market file");
  app.add_option("--generator", generator, "tridiag:<d>, blocks:<d>:<block> or randspd:<d>");
  app.add_option("--dataset", dataset, "CSV dataset with a header row");
  app.add_option("--dataset-generator", dataset_generator, "blobs:<d>:<p>:<nblobs>");
  app.add_option("--target", c.target, "target column of the CSV dataset");
  app.add_option("--candidates", c.candidates, "I, blk:<l>, rcm:<l>")->delimiter(',');
  app.add_option("--algorithm", c.algorithm, "alg2 (fixed k) or alg3 (adaptive)")
      ->transform(CLI::CheckedTransformer(algorithms));
  app.add_option("--k", c.k, "sketch size");
  app.add_option("--epsilon", c.epsilon, "alg3 accuracy");
  app.add_option("--delta", c.delta, "alg3 failure probability");
  app.add_option("--rel-tol", relative_tol, "PCG relative tolerance (negative disables)");
  app.add_option("--abs-tol", absolute_tol, "PCG absolute tolerance (negative disables)");
  app.add_option("--max-iterations", c.max_iterations, "PCG iteration cap");
  app.add_option("--length-scales", c.length_scales, "kernel length scales")->delimiter(',');
  app.add_option("--noises", c.noises, "kernel noise variances")->delimiter(',');
  app.add_option("--rank", c.rank, "rank of the low-rank kernel candidate");
  app.add_option("--clusters", c.clusters, "k-means clusters (0: ceil(sqrt(d)))");
  app.add_option("--kernel-abs-tol", c.kernel_abs_tol, "kernel absolute tolerance per sqrt(d)");
  app.add_option("--kernel-rel-tol", c.kernel_rel_tol, "kernel relative tolerance");
  app.add_option("--kernel-max-iterations", c.kernel_max_iterations, "kernel PCG iteration cap");
  app.add_option("--trials", c.trials, "selection trials");
  app.add_option("--seed", c.seed, "random seed");
  app.add_flag("--exact", c.exact, "also compute the exact stability");
  app.add_option("--threads", c.threads, "worker threads (0: all cores)");
  app.add_option("--out", out_dir, "output directory for JSON and CSV reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (!matrix.empty()) c.matrix = matrix;
  if (!generator.empty()) c.generator = generator;
  if (!dataset.empty()) c.dataset = dataset;
  if (!dataset_generator.empty()) c.dataset_generator = dataset_generator;
  if (!out_dir.empty()) c.out = out_dir;
  if (app.count("--rel-tol") > 0) c.relative_tol = relative_tol >= 0.0 ? std::optional(relative_tol) : std::nullopt;
  if (app.count("--abs-tol") > 0) c.absolute_tol = absolute_tol >= 0.0 ? std::optional(absolute_tol) : std::nullopt;
  c.validate();
  return c;
}

void run(const ExperimentConfig& config, std::ostream& out) {
  switch (config.mode) {
    case Mode::sparse: run_sparse(config, out); break;
    case Mode::kernel: run_kernel(config, out); break;
    case Mode::estimate: run_estimate_mode(config, out); break;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto config = parse_arguments(argc, argv, out);
    if (!config) return 0;
    run(*config, out);
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const ArgumentError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const DimensionError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace stabsel::cli
