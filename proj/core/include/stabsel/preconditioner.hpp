#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stabsel/linear_operator.hpp"
#include "stabsel/sparse.hpp"
#include "stabsel/types.hpp"

namespace stabsel {

/// A preconditioner M, exposed only through z = M^{-1} v.
///
/// Implementations are immutable after construction and `apply` is
/// thread-safe. Every call to `apply` bumps `solve_count()`.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;

  virtual Index dim() const = 0;
  virtual std::string label() const = 0;

  void apply(const Vector& v, Vector& out) const {
    require_same_dim(dim(), v.size(), "Preconditioner::apply");
    solves_.increment();
    solve(v, out);
  }

  Vector apply(const Vector& v) const {
    Vector out(dim());
    apply(v, out);
    return out;
  }

  std::size_t solve_count() const noexcept { return solves_.value(); }
  void reset_solve_count() const noexcept { solves_.reset(); }

 protected:
  virtual void solve(const Vector& v, Vector& out) const = 0;

 private:
  CallCounter solves_;
};

/// M = I.
class IdentityPreconditioner final : public Preconditioner {
 public:
  explicit IdentityPreconditioner(Index dim);

  Index dim() const override { return dim_; }
  std::string label() const override { return "I"; }

 protected:
  void solve(const Vector& v, Vector& out) const override { out = v; }

 private:
  Index dim_;
};

/// M = P^T blockdiag(B_0, B_1, ...) P with each B_m held as a dense Cholesky
/// factor. P is the row permutation (P v)_i = v[perm[i]]; an empty permutation
/// means the natural ordering. Block m covers permuted indices
/// [offsets[m], offsets[m + 1]).
class BlockDiagonalPreconditioner final : public Preconditioner {
 public:
  /// Pinches (P A P^T) onto the blocks. Throws NumericalError naming the
  /// first block whose Cholesky factorization fails.
  BlockDiagonalPreconditioner(const SparseMatrixCSR& a, std::vector<Index> perm,
                              std::vector<Index> offsets, std::string label);

  /// Pinches (P K P^T + shift I) for dense symmetric K.
  BlockDiagonalPreconditioner(const Matrix& k, double shift, std::vector<Index> perm,
                              std::vector<Index> offsets, std::string label);

  /// Adopts already-formed blocks that live in the permuted frame.
  BlockDiagonalPreconditioner(std::vector<Matrix> blocks, std::vector<Index> perm,
                              std::string label);

  Index dim() const override { return dim_; }
  std::string label() const override { return label_; }

  std::span<const Index> permutation() const noexcept { return perm_; }
  std::span<const Index> offsets() const noexcept { return offsets_; }
  Index block_count() const noexcept { return static_cast<Index>(factors_.size()); }

  /// Solves the block system in the permuted frame, in place. Does not count
  /// as an apply.
  void solve_permuted(Vector& z) const;
  void solve_permuted(Matrix& z) const;

  /// Dense M in the original ordering (test scale only).
  Matrix materialize() const;

  /// Dense block-diagonal matrix in the permuted frame (test scale only).
  Matrix materialize_permuted() const;

 protected:
  void solve(const Vector& v, Vector& out) const override;

 private:
  void factor_blocks(std::vector<Matrix> blocks);

  Index dim_ = 0;
  std::vector<Index> perm_;
  std::vector<Index> offsets_;
  std::vector<Eigen::LLT<Matrix>> factors_;
  std::string label_;
};

/// Block boundaries {0, l, 2l, ..., dim}.
std::vector<Index> uniform_block_offsets(Index dim, Index block_size);

/// Block-diagonal pinch of A with block size `block_size` (Blk_l).
BlockDiagonalPreconditioner block_pinch(const SparseMatrixCSR& a, Index block_size);

/// Block pinch after Reverse Cuthill-McKee reordering (RCM_l).
BlockDiagonalPreconditioner rcm_block_pinch(const SparseMatrixCSR& a, Index block_size);

/// Candidate declaration from configuration: identity, blk:<l> or rcm:<l>.
struct CandidateSpec {
  enum class Kind { identity, blk, rcm };
  Kind kind = Kind::identity;
  Index block_size = 1;

  std::string label() const;
  /// Parses "I" / "identity" / "none", "blk:<l>", "rcm:<l>" (case-insensitive).
  static CandidateSpec parse(const std::string& text);
};

std::unique_ptr<Preconditioner> build_candidate(const SparseMatrixCSR& a, const CandidateSpec& spec);

}  // namespace stabsel
