#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stabsel/preconditioner.hpp"
#include "stabsel/random.hpp"

namespace stabsel {

/// d points in R^p (one per row of `points`) with regression targets.
struct Dataset {
  Matrix points;
  Vector targets;

  Index size() const noexcept { return points.rows(); }
  Index features() const noexcept { return points.cols(); }
  void validate() const;
};

/// Reads a CSV file with a header row and numeric columns. `target` names the
/// target column; a bare integer is accepted as a 0-based column index when no
/// header matches it. Every other column becomes a feature.
Dataset read_csv_dataset(const std::filesystem::path& path, const std::string& target);

/// Squared exponential Gram matrix K_ij = exp(-||x_i - x_j||^2 / (2 l^2)),
/// with the diagonal set to exactly 1.
Matrix gram_matrix(const Matrix& points, double length_scale);

/// The regularized kernel system (K + noise I) alpha = y.
struct KernelSystem {
  Matrix gram;
  double noise = 0.0;
  double length_scale = 1.0;

  Index dim() const noexcept { return gram.rows(); }
};

KernelSystem make_kernel_system(const Dataset& data, double length_scale, double noise);

/// k-means partition of the points and the permutation grouping each cluster.
struct Clustering {
  std::vector<Index> assignment;   ///< cluster id per point
  std::vector<Index> permutation;  ///< permutation[i] = original point placed at position i
  std::vector<Index> offsets;      ///< non-empty cluster boundaries in the permuted order
  Matrix centers;                  ///< one row per cluster
  Index iterations = 0;            ///< Lloyd iterations performed
  double cost = 0.0;               ///< within-cluster sum of squared distances

  Index cluster_count() const noexcept { return static_cast<Index>(offsets.size()) - 1; }
};

/// ceil(sqrt(d)).
Index default_cluster_count(Index d);

/// k-means++ seeding followed by Lloyd iterations until the assignment stops
/// changing (at most `max_iterations`). Empty clusters are re-seeded with the
/// point farthest from its current center. The permutation orders points by
/// cluster id, stable in the original index.
Clustering kmeans_cluster(const Matrix& points, Index clusters, RandomStream& rng,
                          Index max_iterations = 100);

/// Truncated symmetric factorization K ~ U diag(lambda) U^T.
struct LowRankFactors {
  Matrix u;       ///< d x r, orthonormal columns
  Vector lambda;  ///< r Ritz values, descending

  Index rank() const noexcept { return u.cols(); }
};

/// Randomized subspace iteration (`power_passes` passes, `oversampling` extra
/// columns) followed by Rayleigh-Ritz on the symmetric matrix `k`. Requires
/// 0 <= rank < dim; rank 0 returns empty factors.
LowRankFactors lowrank_approx(const Matrix& k, Index rank, RandomStream& rng, Index power_passes = 2,
                              Index oversampling = 10);

/// Cluster-permuted block pinch of a kernel system, optionally with a rank-r
/// term: M = P^T (U Lambda U^T + pinch(P K P^T - U Lambda U^T) + noise I) P.
/// Solves go through the Woodbury identity with a Cholesky-factored
/// capacitance matrix Lambda^{-1} + U^T B^{-1} U.
class GeometricPreconditioner final : public Preconditioner {
 public:
  GeometricPreconditioner(const KernelSystem& system, const Clustering& clustering, LowRankFactors factors);

  Index dim() const override { return blocks_.dim(); }
  std::string label() const override;

  Index rank() const noexcept { return u_.cols(); }
  const Matrix& u() const noexcept { return u_; }
  const Vector& lambda() const noexcept { return lambda_; }
  const BlockDiagonalPreconditioner& blocks() const noexcept { return blocks_; }

  /// Floating point operations of one apply (block triangular solves plus the
  /// rank-r correction).
  double apply_flops() const;

  /// Dense M in the original ordering (test scale only).
  Matrix materialize() const;

 protected:
  void solve(const Vector& v, Vector& out) const override;

 private:
  BlockDiagonalPreconditioner blocks_;
  Matrix u_;
  Vector lambda_;
  Matrix binv_u_;
  Eigen::LLT<Matrix> capacitance_;
};

/// Block pinch of P K P^T + noise I over the clusters (no low-rank term).
GeometricPreconditioner geometric_block_precond(const KernelSystem& system, const Clustering& clustering);

/// Rank-r Ritz factors of P K P^T followed by the Woodbury-applied block preconditioner.
GeometricPreconditioner geometric_lowrank_precond(const KernelSystem& system, const Clustering& clustering,
                                                  Index rank, RandomStream& rng);

/// P K P^T for a clustering permutation.
Matrix permute_symmetric(const Matrix& k, const std::vector<Index>& perm);

}  // namespace stabsel
