#include "stabsel/selection.hpp"

#include <algorithm>
#include <cmath>

namespace stabsel {

namespace {

void check_candidates(CandidateList candidates, Index dim) {
  if (candidates.empty()) throw ArgumentError("selection: empty candidate list");
  for (const Preconditioner* m : candidates) {
    if (m == nullptr) throw ArgumentError("selection: null candidate");
    require_same_dim(dim, m->dim(), "selection candidate");
  }
}

SelectionReport blank_report(CandidateList candidates) {
  SelectionReport report;
  report.labels.reserve(candidates.size());
  for (const Preconditioner* m : candidates) report.labels.push_back(m->label());
  report.estimates.assign(candidates.size(), std::nullopt);
  return report;
}

}  // namespace

std::string to_string(SelectionAlgorithm algorithm) {
  return algorithm == SelectionAlgorithm::adaptive ? "alg3" : "alg2";
}

std::vector<const Preconditioner*> candidate_view(
    const std::vector<std::unique_ptr<Preconditioner>>& owned) {
  std::vector<const Preconditioner*> view;
  view.reserve(owned.size());
  for (const auto& m : owned) view.push_back(m.get());
  return view;
}

std::size_t argmin_lowest_index(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmin of an empty list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

SelectionReport select_with_sketch(CandidateList candidates, const Sketch& sketch) {
  check_candidates(candidates, sketch.q.rows());
  SelectionReport report = blank_report(candidates);
  report.k = sketch.k();

  SelectionRound round;
  round.k = sketch.k();
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    round.evaluated.push_back(j);
    round.estimates.push_back(sketch_stability(*candidates[j], sketch));
    report.estimates[j] = round.estimates.back();
  }
  round.minimizer = argmin_lowest_index(round.estimates);
  round.survivors = {round.minimizer};
  report.chosen_index = round.minimizer;
  report.total_spmv = sketch.spmv_count;
  report.total_solves = candidates.size() * static_cast<std::size_t>(sketch.k());
  report.gaussian_draws = sketch.gaussian_draws;
  report.rounds.push_back(std::move(round));
  return report;
}

SelectionReport select_preconditioner(const LinearOperator& a, CandidateList candidates, Index k,
                                      RandomStream& rng, SketchPolicy policy) {
  if (k < 1) throw ArgumentError("select_preconditioner: k must be >= 1");
  check_candidates(candidates, a.dim());

  if (policy == SketchPolicy::shared) {
    SelectionReport report = select_with_sketch(candidates, draw_sketch(a, k, rng));
    report.sketch_policy = SketchPolicy::shared;
    return report;
  }

  SelectionReport report = blank_report(candidates);
  report.sketch_policy = SketchPolicy::independent;
  report.k = k;
  SelectionRound round;
  round.k = k;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const StabilityEstimate est = stab_estimate(a, *candidates[j], k, rng);
    round.evaluated.push_back(j);
    round.estimates.push_back(est.value);
    report.estimates[j] = est.value;
    report.total_spmv += est.spmv_count;
    report.total_solves += est.solve_count;
    report.gaussian_draws += est.gaussian_draws;
  }
  round.minimizer = argmin_lowest_index(round.estimates);
  round.survivors = {round.minimizer};
  report.chosen_index = round.minimizer;
  report.rounds.push_back(std::move(round));
  return report;
}

Index adaptive_round_count(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  Index t = 0;
  while (std::ldexp(1.0, static_cast<int>(-t)) > epsilon) ++t;
  return t;
}

SelectionReport adaptive_select(const LinearOperator& a, CandidateList candidates, double epsilon,
                                double delta, RandomStream& rng) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ArgumentError("adaptive_select: epsilon must lie in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("adaptive_select: delta must lie in (0, 1)");
  check_candidates(candidates, a.dim());

  SelectionReport report = blank_report(candidates);
  report.algorithm = SelectionAlgorithm::adaptive;
  report.epsilon = epsilon;
  report.delta = delta;

  const Index rounds = adaptive_round_count(epsilon);
  std::vector<std::size_t> alive(candidates.size());
  for (std::size_t j = 0; j < alive.size(); ++j) alive[j] = j;

  double eps_cur = 1.0;
  for (Index t = 1; t <= rounds; ++t) {
    eps_cur /= 2.0;
    const double bound = 6.0 / (eps_cur * eps_cur) *
                         std::log(2.0 * static_cast<double>(rounds) * static_cast<double>(alive.size()) / delta);
    const Index k = std::max<Index>(1, static_cast<Index>(std::ceil(bound)));
    const Sketch sketch = draw_sketch(a, k, rng);

    SelectionRound round;
    round.epsilon = eps_cur;
    round.k = k;
    round.evaluated = alive;
    for (std::size_t j : alive) round.estimates.push_back(sketch_stability(*candidates[j], sketch));
    const std::size_t local_min = argmin_lowest_index(round.estimates);
    round.minimizer = alive[local_min];

    const double threshold = round.estimates[local_min] * std::sqrt((1.0 + eps_cur) / (1.0 - eps_cur));
    for (std::size_t p = 0; p < alive.size(); ++p) {
      if (round.estimates[p] <= threshold) round.survivors.push_back(alive[p]);
    }

    report.total_spmv += sketch.spmv_count;
    report.total_solves += alive.size() * static_cast<std::size_t>(k);
    report.gaussian_draws += sketch.gaussian_draws;
    alive = round.survivors;
    report.rounds.push_back(std::move(round));
  }

  const SelectionRound& last = report.rounds.back();
  for (std::size_t p = 0; p < last.evaluated.size(); ++p) report.estimates[last.evaluated[p]] = last.estimates[p];
  report.chosen_index = last.minimizer;
  report.k = last.k;
  return report;
}

bool selection_guarantee_check(const SelectionReport& report, std::span<const double> exact_values,
                               double epsilon) {
  require_same_dim(static_cast<Index>(report.labels.size()), static_cast<Index>(exact_values.size()),
                   "selection_guarantee_check");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  if (report.chosen_index >= exact_values.size()) throw ArgumentError("chosen index out of range");
  const double best = *std::min_element(exact_values.begin(), exact_values.end());
  return exact_values[report.chosen_index] <= std::sqrt((1.0 + epsilon) / (1.0 - epsilon)) * best;
}

}  // namespace stabsel
