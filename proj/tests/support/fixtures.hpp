#pragma once

#include <Eigen/Cholesky>
#include <memory>
#include <string>
#include <vector>

#include "stabsel/kernel.hpp"
#include "stabsel/preconditioner.hpp"
#include "stabsel/random.hpp"
#include "stabsel/sparse.hpp"

namespace stabsel::fixtures {

/// Dense SPD matrix B^T B + I.
Matrix random_spd_dense(Index d, std::uint64_t seed);

/// Same matrix as CSR.
SparseMatrixCSR random_spd_sparse(Index d, std::uint64_t seed);

/// Random sparse square matrix with about `nnz` entries.
SparseMatrixCSR random_sparse(Index d, Index nnz, std::uint64_t seed);

/// A = I - e_1 e_1^T.
SparseMatrixCSR identity_minus_e1(Index d);

/// SPD matrix with bandwidth `band` and entries decaying away from the diagonal.
SparseMatrixCSR banded_spd(Index d, Index band, std::uint64_t seed);

/// Block diagonal of dense SPD blocks with scales 1, 10, 100 in turn, joined
/// by entries of size `coupling` between neighbouring blocks.
SparseMatrixCSR weakly_coupled_blocks(Index d, Index block, double coupling, std::uint64_t seed);

/// `size` points drawn uniformly from the unit cube in `features` dimensions.
Dataset uniform_points(Index size, Index features, std::uint64_t seed);

/// Preconditioner with M^{-1} = (I - E) A^{-1}, so that I - M^{-1} A = E and the
/// exact stability is ||E||_F.
class PrescribedErrorPreconditioner final : public Preconditioner {
 public:
  PrescribedErrorPreconditioner(const Matrix& a, Matrix e, std::string label);

  Index dim() const override { return e_.rows(); }
  std::string label() const override { return label_; }
  const Matrix& error() const { return e_; }

 protected:
  void solve(const Vector& v, Vector& out) const override;

 private:
  Eigen::LLT<Matrix> a_factor_;
  Matrix e_;
  std::string label_;
};

/// Random d x d matrix rescaled to Frobenius norm `norm`.
Matrix random_error_matrix(Index d, double norm, std::uint64_t seed);

/// M^{-1} v = c v: stability ||I - c A||_F.
class ScaledIdentityPreconditioner final : public Preconditioner {
 public:
  ScaledIdentityPreconditioner(Index d, double c) : d_(d), c_(c) {}
  Index dim() const override { return d_; }
  std::string label() const override { return "scaled"; }

 protected:
  void solve(const Vector& v, Vector& out) const override { out = c_ * v; }

 private:
  Index d_;
  double c_;
};

/// Ten prescribed-error candidates on a 30 x 30 SPD matrix: candidate 4 has
/// exact stability 1, the others 3 to 7.
struct ClearWinnerFixture {
  Matrix a_dense;
  SparseMatrixCSR a;
  std::vector<std::unique_ptr<Preconditioner>> owned;
  std::vector<double> exact;
  std::size_t winner = 4;

  ClearWinnerFixture();
};

/// Dense ||I - M^{-1} A||_F from materialized matrices.
double dense_stability(const Matrix& a, const Matrix& m);

double relative_error(const Vector& x, const Vector& reference);

}  // namespace stabsel::fixtures
