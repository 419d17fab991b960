#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabsel/linear_operator.hpp"
#include "stabsel/preconditioner.hpp"

namespace stabsel {

/// Converged when ||r|| <= relative * ||b|| OR ||r|| <= absolute.
struct StoppingRule {
  std::optional<double> relative_tol = 1e-9;
  std::optional<double> absolute_tol;
  Index max_iterations = 50000;

  /// Effective residual threshold for a right-hand side of norm `b_norm`.
  double threshold(double b_norm) const;
  void validate() const;
};

struct SolveResult {
  Vector x;
  Index iterations = 0;
  bool converged = false;
  /// Recurrence residual norm after the last iteration.
  double final_residual_norm = 0.0;
  /// One entry per iteration; the last equals final_residual_norm.
  std::vector<double> residual_history;
  /// ||b - A x|| recomputed explicitly at exit.
  double true_residual_norm = 0.0;
  double tolerance = 0.0;
  std::size_t operator_applies = 0;
  std::size_t preconditioner_applies = 0;
  /// Set when the explicit and recurrence residuals disagree by more than 10x the tolerance.
  std::optional<std::string> warning;
};

/// Preconditioned conjugate gradients for symmetric positive definite A and M.
///
/// Non-convergence within `rule.max_iterations` is reported through
/// `converged = false`. Throws NumericalError on breakdown (p^T A p <= 0 or
/// r^T z <= 0).
SolveResult pcg_solve(const LinearOperator& a, const Preconditioner& m, const Vector& b,
                      const StoppingRule& rule, const std::optional<Vector>& x0 = std::nullopt);

}  // namespace stabsel
