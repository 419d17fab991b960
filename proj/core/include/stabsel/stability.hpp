#pragma once

#include <cstdint>

#include "stabsel/linear_operator.hpp"
#include "stabsel/preconditioner.hpp"
#include "stabsel/random.hpp"

namespace stabsel {

/// Randomized estimate S of the preconditioner stability ||I - M^{-1} A||_F.
struct StabilityEstimate {
  double value = 0.0;
  Index k = 0;
  std::uint64_t seed = 0;
  std::size_t spmv_count = 0;
  std::size_t solve_count = 0;
  /// Normal variates drawn for this estimate (0 when the sketch was supplied).
  std::size_t gaussian_draws = 0;
};

/// A Gaussian sketch Q (d x k, entries N(0, 1/k)) together with the products
/// A Q, so that several candidates can share both.
struct Sketch {
  Matrix q;
  Matrix aq;
  std::size_t gaussian_draws = 0;
  std::size_t spmv_count = 0;

  Index k() const noexcept { return q.cols(); }
};

/// Draws Q with variance 1/k from `rng` and forms A Q (k operator products).
Sketch draw_sketch(const LinearOperator& a, Index k, RandomStream& rng);

/// Wraps a caller-provided Q and forms A Q.
Sketch make_sketch(const LinearOperator& a, Matrix q);

/// ||Q - M^{-1}(A Q)||_F using the cached products; exactly k applies of M.
double sketch_stability(const Preconditioner& m, const Sketch& sketch);

/// Draws Q ~ N(0, 1/k) and returns ||(I - M^{-1} A) Q||_F. Uses exactly k
/// products with A and k applies of M.
StabilityEstimate stab_estimate(const LinearOperator& a, const Preconditioner& m, Index k,
                                RandomStream& rng);
StabilityEstimate stab_estimate(const SparseMatrixCSR& a, const Preconditioner& m, Index k,
                                RandomStream& rng);

/// Same estimate with a pre-drawn sketch matrix (k = q.cols()).
StabilityEstimate stab_estimate(const LinearOperator& a, const Preconditioner& m, const Matrix& q);

/// Deterministic ||I - M^{-1} A||_F from the d standard basis vectors
/// (d products with A, d applies of M).
double exact_stability(const LinearOperator& a, const Preconditioner& m);
double exact_stability(const SparseMatrixCSR& a, const Preconditioner& m);

/// Smallest k with k >= 12 / (eps^2 (3 - 2 eps)) ln(2 / delta): one estimate
/// lands in [sqrt(1-eps), sqrt(1+eps)] x exact with probability >= 1 - delta.
Index sample_size_stab(double epsilon, double delta);

/// Smallest k with k >= 12 / (eps^2 (3 - 2 eps)) ln(2 n / delta): the
/// minimum-estimate candidate among n is within sqrt((1+eps)/(1-eps)) of the
/// best with probability >= 1 - delta.
Index sample_size_select(double epsilon, double delta, Index n);

}  // namespace stabsel
