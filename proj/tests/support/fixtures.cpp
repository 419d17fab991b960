#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace stabsel::fixtures {

Matrix random_spd_dense(Index d, std::uint64_t seed) {
  RandomStream rng(seed, 11);
  const Matrix b = gaussian_matrix(d, d, 1.0 / static_cast<double>(d), rng);
  Matrix a = b.transpose() * b;
  a.diagonal().array() += 1.0;
  return 0.5 * (a + a.transpose());
}

SparseMatrixCSR random_spd_sparse(Index d, std::uint64_t seed) {
  return SparseMatrixCSR::from_dense(random_spd_dense(d, seed));
}

SparseMatrixCSR random_sparse(Index d, Index nnz, std::uint64_t seed) {
  RandomStream rng(seed, 12);
  std::vector<Triplet> t;
  for (Index n = 0; n < nnz; ++n) {
    t.push_back({static_cast<Index>(rng.uniform_index(d)), static_cast<Index>(rng.uniform_index(d)),
                 rng.normal()});
  }
  return SparseMatrixCSR::from_triplets(d, t);
}

SparseMatrixCSR identity_minus_e1(Index d) {
  std::vector<Triplet> t;
  for (Index i = 1; i < d; ++i) t.push_back({i, i, 1.0});
  return SparseMatrixCSR::from_triplets(d, t);
}

SparseMatrixCSR banded_spd(Index d, Index band, std::uint64_t seed) {
  RandomStream rng(seed, 13);
  std::vector<Triplet> t;
  Vector rowsum = Vector::Zero(d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j <= std::min(d - 1, i + band); ++j) {
      const double w = (0.5 + rng.uniform()) / static_cast<double>(j - i);
      t.push_back({i, j, -w});
      t.push_back({j, i, -w});
      rowsum[i] += w;
      rowsum[j] += w;
    }
  }
  for (Index i = 0; i < d; ++i) t.push_back({i, i, rowsum[i] + 0.05});
  return SparseMatrixCSR::from_triplets(d, t);
}

SparseMatrixCSR weakly_coupled_blocks(Index d, Index block, double coupling, std::uint64_t seed) {
  RandomStream rng(seed, 15);
  std::vector<Triplet> t;
  for (Index start = 0, b = 0; start < d; start += block, ++b) {
    const Index n = std::min(block, d - start);
    const Matrix g = gaussian_matrix(n, n, 1.0, rng);
    const double scale = std::pow(10.0, static_cast<double>(b % 3));
    const Matrix s = scale * (g.transpose() * g + Matrix::Identity(n, n));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) t.push_back({start + i, start + j, s(i, j)});
    }
    if (start + n < d) {
      t.push_back({start + n - 1, start + n, -coupling});
      t.push_back({start + n, start + n - 1, -coupling});
    }
  }
  return SparseMatrixCSR::from_triplets(d, t);
}

Dataset uniform_points(Index size, Index features, std::uint64_t seed) {
  RandomStream rng(seed, 16);
  Dataset data;
  data.points.resize(size, features);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < features; ++j) data.points(i, j) = rng.uniform();
  }
  data.targets = Vector::Zero(size);
  return data;
}

PrescribedErrorPreconditioner::PrescribedErrorPreconditioner(const Matrix& a, Matrix e, std::string label)
    : a_factor_(a), e_(std::move(e)), label_(std::move(label)) {}

void PrescribedErrorPreconditioner::solve(const Vector& v, Vector& out) const {
  const Vector y = a_factor_.solve(v);
  out = y - e_ * y;
}

Matrix random_error_matrix(Index d, double norm, std::uint64_t seed) {
  RandomStream rng(seed, 14);
  Matrix e = gaussian_matrix(d, d, 1.0, rng);
  return e * (norm / e.norm());
}

ClearWinnerFixture::ClearWinnerFixture()
    : a_dense(random_spd_dense(30, 77)), a(SparseMatrixCSR::from_dense(a_dense)) {
  for (std::size_t i = 0; i < 10; ++i) {
    const double norm = i == winner ? 1.0 : 3.0 + 0.5 * static_cast<double>(i);
    owned.push_back(std::make_unique<PrescribedErrorPreconditioner>(a_dense, random_error_matrix(30, norm, 500 + i),
                                                                    "E" + std::to_string(i)));
    exact.push_back(norm);
  }
}

double dense_stability(const Matrix& a, const Matrix& m) {
  const Index d = a.rows();
  return (Matrix::Identity(d, d) - m.llt().solve(a)).norm();
}

double relative_error(const Vector& x, const Vector& reference) {
  return (x - reference).norm() / reference.norm();
}

}  // namespace stabsel::fixtures
