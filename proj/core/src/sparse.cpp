#include "stabsel/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stabsel {

SparseMatrixCSR::SparseMatrixCSR(Index dim, std::vector<Index> row_ptr, std::vector<Index> col_idx,
                                 std::vector<double> values)
    : dim_(dim), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (dim_ < 1) throw ArgumentError("SparseMatrixCSR: dim must be positive");
  if (static_cast<Index>(row_ptr_.size()) != dim_ + 1) {
    throw DimensionError("SparseMatrixCSR: row_ptr must have dim + 1 entries");
  }
  if (col_idx_.size() != values_.size()) {
    throw DimensionError("SparseMatrixCSR: col_idx and values differ in length");
  }
  if (row_ptr_.front() != 0 || row_ptr_.back() != static_cast<Index>(values_.size())) {
    throw ArgumentError("SparseMatrixCSR: row_ptr must start at 0 and end at nnz");
  }
  for (Index i = 0; i < dim_; ++i) {
    const Index begin = row_ptr_[i];
    const Index end = row_ptr_[i + 1];
    if (end < begin) throw ArgumentError("SparseMatrixCSR: row_ptr is decreasing at row " + std::to_string(i));
    for (Index p = begin; p < end; ++p) {
      const Index c = col_idx_[p];
      if (c < 0 || c >= dim_) {
        throw ArgumentError("SparseMatrixCSR: column index out of range in row " + std::to_string(i));
      }
      if (p > begin && col_idx_[p - 1] >= c) {
        throw ArgumentError("SparseMatrixCSR: column indices not strictly increasing in row " +
                            std::to_string(i));
      }
      if (!std::isfinite(values_[p])) {
        throw ArgumentError("SparseMatrixCSR: non-finite value in row " + std::to_string(i));
      }
    }
  }
}

SparseMatrixCSR SparseMatrixCSR::from_triplets(Index dim, std::span<const Triplet> entries) {
  if (dim < 1) throw ArgumentError("from_triplets: dim must be positive");
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted) {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim) {
      throw ArgumentError("from_triplets: entry (" + std::to_string(t.row) + ", " +
                          std::to_string(t.col) + ") out of range");
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  std::vector<Index> row_ptr(dim + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(sorted.size());
  vals.reserve(sorted.size());
  for (std::size_t p = 0; p < sorted.size(); ++p) {
    const auto& t = sorted[p];
    if (p > 0 && sorted[p - 1].row == t.row && sorted[p - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    cols.push_back(t.col);
    vals.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  std::partial_sum(row_ptr.begin(), row_ptr.end(), row_ptr.begin());
  return SparseMatrixCSR(dim, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseMatrixCSR SparseMatrixCSR::from_dense(const Matrix& dense, double drop_tolerance) {
  if (dense.rows() != dense.cols()) throw DimensionError("from_dense: matrix is not square");
  const Index d = dense.rows();
  std::vector<Index> row_ptr(d + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (std::abs(dense(i, j)) > drop_tolerance) {
        cols.push_back(j);
        vals.push_back(dense(i, j));
      }
    }
    row_ptr[i + 1] = static_cast<Index>(vals.size());
  }
  return SparseMatrixCSR(d, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseMatrixCSR SparseMatrixCSR::identity(Index dim) {
  if (dim < 1) throw ArgumentError("identity: dim must be positive");
  std::vector<Index> row_ptr(dim + 1);
  std::vector<Index> cols(dim);
  std::iota(row_ptr.begin(), row_ptr.end(), Index{0});
  std::iota(cols.begin(), cols.end(), Index{0});
  return SparseMatrixCSR(dim, std::move(row_ptr), std::move(cols), std::vector<double>(dim, 1.0));
}

void SparseMatrixCSR::multiply(const Vector& x, Vector& y) const {
  require_same_dim(dim_, x.size(), "spmv");
  y.resize(dim_);
  const Index* rp = row_ptr_.data();
  const Index* ci = col_idx_.data();
  const double* v = values_.data();
  const double* xs = x.data();
  for (Index i = 0; i < dim_; ++i) {
    double sum = 0.0;
    for (Index p = rp[i]; p < rp[i + 1]; ++p) sum += v[p] * xs[ci[p]];
    y[i] = sum;
  }
}

Vector SparseMatrixCSR::multiply(const Vector& x) const {
  Vector y;
  multiply(x, y);
  return y;
}

double SparseMatrixCSR::coeff(Index i, Index j) const {
  const auto begin = col_idx_.begin() + row_ptr_[i];
  const auto end = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[it - col_idx_.begin()] : 0.0;
}

SparseMatrixCSR SparseMatrixCSR::permuted(std::span<const Index> perm) const {
  require_same_dim(dim_, static_cast<Index>(perm.size()), "permuted");
  const std::vector<Index> inv = invert_permutation(perm);
  std::vector<Index> row_ptr(dim_ + 1, 0);
  std::vector<Index> cols;
  std::vector<double> vals;
  cols.reserve(col_idx_.size());
  vals.reserve(values_.size());
  std::vector<std::pair<Index, double>> row;
  for (Index i = 0; i < dim_; ++i) {
    const Index src = perm[i];
    row.clear();
    for (Index p = row_ptr_[src]; p < row_ptr_[src + 1]; ++p) row.emplace_back(inv[col_idx_[p]], values_[p]);
    std::sort(row.begin(), row.end());
    for (const auto& [c, v] : row) {
      cols.push_back(c);
      vals.push_back(v);
    }
    row_ptr[i + 1] = static_cast<Index>(vals.size());
  }
  return SparseMatrixCSR(dim_, std::move(row_ptr), std::move(cols), std::move(vals));
}

Index SparseMatrixCSR::bandwidth() const {
  Index bw = 0;
  for (Index i = 0; i < dim_; ++i) {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) bw = std::max(bw, std::abs(i - col_idx_[p]));
  }
  return bw;
}

Matrix SparseMatrixCSR::to_dense() const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i) {
    for (Index p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) out(i, col_idx_[p]) = values_[p];
  }
  return out;
}

Vector spmv(const SparseMatrixCSR& a, const Vector& x) { return a.multiply(x); }

std::vector<Index> invert_permutation(std::span<const Index> perm) {
  const Index n = static_cast<Index>(perm.size());
  std::vector<Index> inv(perm.size(), -1);
  for (Index i = 0; i < n; ++i) {
    const Index p = perm[i];
    if (p < 0 || p >= n || inv[p] != -1) throw ArgumentError("invert_permutation: not a permutation");
    inv[p] = i;
  }
  return inv;
}

}  // namespace stabsel
