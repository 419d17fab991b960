#pragma once

#include <span>
#include <vector>

#include "stabsel/types.hpp"

namespace stabsel {

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Immutable square sparse matrix in compressed sparse row storage.
///
/// Invariants (checked at construction): row_ptr[0] = 0, row_ptr non-decreasing,
/// row_ptr[dim] = nnz, column indices strictly increasing within a row and in
/// [0, dim), all values finite.
class SparseMatrixCSR {
 public:
  SparseMatrixCSR(Index dim, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                  std::vector<double> values);

  /// Builds from coordinate entries; duplicates are summed.
  static SparseMatrixCSR from_triplets(Index dim, std::span<const Triplet> entries);
  /// Keeps every entry with |a_ij| > drop_tolerance.
  static SparseMatrixCSR from_dense(const Matrix& dense, double drop_tolerance = 0.0);
  static SparseMatrixCSR identity(Index dim);

  Index dim() const noexcept { return dim_; }
  Index nnz() const noexcept { return static_cast<Index>(values_.size()); }

  std::span<const Index> row_ptr() const noexcept { return row_ptr_; }
  std::span<const Index> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// y = A x, one pass over the stored entries.
  void multiply(const Vector& x, Vector& y) const;
  Vector multiply(const Vector& x) const;

  /// Stored value at (i, j), 0 if not stored.
  double coeff(Index i, Index j) const;

  /// P A P^T where row i of the result is row perm[i] of A.
  SparseMatrixCSR permuted(std::span<const Index> perm) const;

  /// max |i - j| over stored entries.
  Index bandwidth() const;

  Matrix to_dense() const;

 private:
  Index dim_;
  std::vector<Index> row_ptr_;
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

/// Returns A x. Throws DimensionError when x.size() != A.dim().
Vector spmv(const SparseMatrixCSR& a, const Vector& x);

/// Validates that `perm` is a bijection on {0, ..., n-1}; returns its inverse.
std::vector<Index> invert_permutation(std::span<const Index> perm);

}  // namespace stabsel
