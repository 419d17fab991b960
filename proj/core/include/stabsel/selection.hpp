#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabsel/stability.hpp"

namespace stabsel {

enum class SelectionAlgorithm {
  exhaustive,  ///< estimate every candidate once at a fixed k, take the minimum
  adaptive,    ///< geometric accuracy refinement with filtering of clear losers
};

enum class SketchPolicy {
  shared,       ///< one Q (and one A Q) per round for all candidates
  independent,  ///< a fresh Q per candidate
};

std::string to_string(SelectionAlgorithm algorithm);

/// One pass of estimation over the candidates still in play.
struct SelectionRound {
  double epsilon = 0.0;  ///< accuracy of this round (adaptive only)
  Index k = 0;
  std::vector<std::size_t> evaluated;  ///< candidate indices estimated this round
  std::vector<double> estimates;       ///< aligned with `evaluated`
  std::size_t minimizer = 0;
  std::vector<std::size_t> survivors;  ///< candidates kept after the round's filter
};

struct SelectionReport {
  SelectionAlgorithm algorithm = SelectionAlgorithm::exhaustive;
  SketchPolicy sketch_policy = SketchPolicy::shared;
  std::vector<std::string> labels;
  /// Final-round estimate per candidate; empty for candidates filtered out earlier.
  std::vector<std::optional<double>> estimates;
  std::size_t chosen_index = 0;
  Index k = 0;           ///< exhaustive: sketch size
  double epsilon = 0.0;  ///< adaptive: target accuracy
  double delta = 0.0;    ///< adaptive: failure probability
  std::vector<SelectionRound> rounds;
  std::size_t total_spmv = 0;
  std::size_t total_solves = 0;
  std::size_t gaussian_draws = 0;

  const std::string& chosen_label() const { return labels.at(chosen_index); }
};

using CandidateList = std::span<const Preconditioner* const>;

/// Borrowed pointers to owned candidates, for passing as a CandidateList.
std::vector<const Preconditioner*> candidate_view(const std::vector<std::unique_ptr<Preconditioner>>& owned);

/// Index of the smallest value; ties go to the lowest index.
std::size_t argmin_lowest_index(std::span<const double> values);

/// Estimates every candidate against one sketch and returns the minimizer.
SelectionReport select_with_sketch(CandidateList candidates, const Sketch& sketch);

/// Estimate-and-minimize selection at fixed k. With a shared sketch the products
/// A Q are formed once, so the cost is k products with A plus n k applies.
SelectionReport select_preconditioner(const LinearOperator& a, CandidateList candidates, Index k,
                                      RandomStream& rng, SketchPolicy policy = SketchPolicy::shared);

/// Adaptive selection: T = ceil(log2(1/eps)) rounds; round t uses
/// eps_t = 2^-t and k_t = ceil(6 / eps_t^2 ln(2 T |P| / delta)) on a fresh
/// shared sketch, then keeps the candidates with
/// S_i <= S_min sqrt((1 + eps_t) / (1 - eps_t)).
SelectionReport adaptive_select(const LinearOperator& a, CandidateList candidates, double epsilon,
                                double delta, RandomStream& rng);

/// Number of adaptive rounds, the smallest T with 2^-T <= epsilon.
Index adaptive_round_count(double epsilon);

/// True iff exact[chosen] <= sqrt((1 + eps) / (1 - eps)) min(exact).
bool selection_guarantee_check(const SelectionReport& report, std::span<const double> exact_values,
                               double epsilon);

}  // namespace stabsel
