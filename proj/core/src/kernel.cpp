#include "stabsel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace stabsel {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double squared_distance(const Matrix& points, Index i, const Matrix& centers, Index m) {
  return (points.row(i) - centers.row(m)).squaredNorm();
}

}  // namespace

void Dataset::validate() const {
  if (points.rows() < 1 || points.cols() < 1) throw ArgumentError("Dataset: need at least one point and feature");
  require_same_dim(points.rows(), targets.size(), "Dataset targets");
  if (!points.allFinite() || !targets.allFinite()) throw ArgumentError("Dataset: non-finite entries");
}

Dataset read_csv_dataset(const std::filesystem::path& path, const std::string& target) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty CSV file", 1);
  ++line_no;
  const std::vector<std::string> header = split_csv(line);
  const Index cols = static_cast<Index>(header.size());

  Index target_col = -1;
  for (Index c = 0; c < cols; ++c) {
    if (header[c] == target) target_col = c;
  }
  if (target_col < 0) {
    try {
      std::size_t used = 0;
      const long long idx = std::stoll(target, &used);
      if (used == target.size() && idx >= 0 && idx < cols) target_col = static_cast<Index>(idx);
    } catch (const std::logic_error&) {
    }
  }
  if (target_col < 0) throw ParseError("target column '" + target + "' not found in header", 1);
  if (cols < 2) throw ParseError("need at least one feature column besides the target", 1);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (static_cast<Index>(fields.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      try {
        std::size_t used = 0;
        row[c] = std::stod(fields[c], &used);
        if (used != fields[c].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::logic_error&) {
        throw ParseError("non-numeric field '" + fields[c] + "'", line_no);
      }
      if (!std::isfinite(row[c])) throw ParseError("non-finite field", line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", line_no);

  Dataset data;
  data.points.resize(static_cast<Index>(rows.size()), cols - 1);
  data.targets.resize(static_cast<Index>(rows.size()));
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
    Index f = 0;
    for (Index c = 0; c < cols; ++c) {
      if (c == target_col) {
        data.targets[i] = rows[i][c];
      } else {
        data.points(i, f++) = rows[i][c];
      }
    }
  }
  return data;
}

Matrix gram_matrix(const Matrix& points, double length_scale) {
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw ArgumentError("gram_matrix: length scale must be positive");
  }
  const Index d = points.rows();
  const double scale = -1.0 / (2.0 * length_scale * length_scale);
  // Work on the transposed points so each point is a contiguous column.
  const Matrix pts = points.transpose();
  Matrix k(d, d);
  for (Index j = 0; j < d; ++j) {
    k(j, j) = 1.0;
    for (Index i = j + 1; i < d; ++i) {
      const double v = std::exp(scale * (pts.col(i) - pts.col(j)).squaredNorm());
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

KernelSystem make_kernel_system(const Dataset& data, double length_scale, double noise) {
  data.validate();
  if (!(noise > 0.0)) throw ArgumentError("make_kernel_system: noise must be positive");
  return KernelSystem{gram_matrix(data.points, length_scale), noise, length_scale};
}

Index default_cluster_count(Index d) {
  if (d < 1) throw ArgumentError("default_cluster_count: d must be positive");
  Index c = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(d))));
  while (c * c < d) ++c;
  while (c > 1 && (c - 1) * (c - 1) >= d) --c;
  return c;
}

Clustering kmeans_cluster(const Matrix& points, Index clusters, RandomStream& rng, Index max_iterations) {
  const Index d = points.rows();
  if (d < 1) throw ArgumentError("kmeans_cluster: no points");
  if (clusters < 1 || clusters > d) throw ArgumentError("kmeans_cluster: need 1 <= c <= d");
  if (max_iterations < 1) throw ArgumentError("kmeans_cluster: max_iterations must be >= 1");
  const Index p = points.cols();
  RandomStream local = rng.split();

  // k-means++ seeding.
  Matrix centers(clusters, p);
  std::vector<char> chosen(d, 0);
  Index first = static_cast<Index>(local.uniform_index(static_cast<std::uint64_t>(d)));
  centers.row(0) = points.row(first);
  chosen[first] = 1;
  Vector d2(d);
  for (Index i = 0; i < d; ++i) d2[i] = squared_distance(points, i, centers, 0);
  for (Index m = 1; m < clusters; ++m) {
    const double total = d2.sum();
    Index pick = -1;
    if (total > 0.0) {
      const double target = local.uniform() * total;
      double acc = 0.0;
      for (Index i = 0; i < d; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    }
    if (pick < 0) {
      // Every remaining point coincides with a center; take an unused one.
      std::vector<Index> unused;
      for (Index i = 0; i < d; ++i) {
        if (!chosen[i]) unused.push_back(i);
      }
      pick = unused[local.uniform_index(unused.size())];
    }
    chosen[pick] = 1;
    centers.row(m) = points.row(pick);
    for (Index i = 0; i < d; ++i) d2[i] = std::min(d2[i], squared_distance(points, i, centers, m));
  }

  // Lloyd iterations.
  std::vector<Index> assignment(d, -1);
  std::vector<Index> next(d);
  Clustering result;
  for (Index it = 1; it <= max_iterations; ++it) {
    for (Index i = 0; i < d; ++i) {
      Index best = 0;
      double best_d = squared_distance(points, i, centers, 0);
      for (Index m = 1; m < clusters; ++m) {
        const double dm = squared_distance(points, i, centers, m);
        if (dm < best_d) {
          best_d = dm;
          best = m;
        }
      }
      next[i] = best;
    }
    result.iterations = it;
    const bool changed = next != assignment;
    assignment = next;
    if (!changed) break;

    std::vector<Index> counts(clusters, 0);
    centers.setZero();
    for (Index i = 0; i < d; ++i) {
      centers.row(assignment[i]) += points.row(i);
      ++counts[assignment[i]];
    }
    for (Index m = 0; m < clusters; ++m) {
      if (counts[m] > 0) centers.row(m) /= static_cast<double>(counts[m]);
    }
    for (Index m = 0; m < clusters; ++m) {
      if (counts[m] > 0) continue;
      // Re-seed from the point farthest from its own center, taken from a
      // cluster that can spare it.
      Index far = -1;
      double far_d = -1.0;
      for (Index i = 0; i < d; ++i) {
        if (counts[assignment[i]] < 2) continue;
        const double di = squared_distance(points, i, centers, assignment[i]);
        if (di > far_d) {
          far_d = di;
          far = i;
        }
      }
      if (far < 0) break;
      --counts[assignment[far]];
      assignment[far] = m;
      counts[m] = 1;
      centers.row(m) = points.row(far);
    }
  }

  // Centers consistent with the final assignment.
  std::vector<Index> counts(clusters, 0);
  Matrix means = Matrix::Zero(clusters, p);
  for (Index i = 0; i < d; ++i) {
    means.row(assignment[i]) += points.row(i);
    ++counts[assignment[i]];
  }
  for (Index m = 0; m < clusters; ++m) {
    means.row(m) = counts[m] > 0 ? Eigen::RowVectorXd(means.row(m) / static_cast<double>(counts[m]))
                                 : Eigen::RowVectorXd(centers.row(m));
  }
  result.cost = 0.0;
  for (Index i = 0; i < d; ++i) result.cost += squared_distance(points, i, means, assignment[i]);
  result.centers = std::move(means);

  result.permutation.resize(d);
  std::iota(result.permutation.begin(), result.permutation.end(), Index{0});
  std::stable_sort(result.permutation.begin(), result.permutation.end(),
                   [&](Index a, Index b) { return assignment[a] < assignment[b]; });
  result.offsets.push_back(0);
  for (Index i = 1; i < d; ++i) {
    if (assignment[result.permutation[i]] != assignment[result.permutation[i - 1]]) result.offsets.push_back(i);
  }
  result.offsets.push_back(d);
  result.assignment = std::move(assignment);
  return result;
}

LowRankFactors lowrank_approx(const Matrix& k, Index rank, RandomStream& rng, Index power_passes,
                              Index oversampling) {
  if (k.rows() != k.cols()) throw DimensionError("lowrank_approx: matrix is not square");
  const Index d = k.rows();
  if (rank < 0 || rank >= d) throw ArgumentError("lowrank_approx: need 0 <= rank < dim");
  if (rank == 0) return LowRankFactors{Matrix(d, 0), Vector(0)};
  const Index width = std::min(d, rank + std::max<Index>(oversampling, 0));

  auto orthonormal_basis = [d, width](const Matrix& y) {
    Eigen::HouseholderQR<Matrix> qr(y);
    return Matrix(qr.householderQ() * Matrix::Identity(d, width));
  };

  Matrix q = orthonormal_basis(k * gaussian_matrix(d, width, 1.0, rng));
  for (Index pass = 0; pass < power_passes; ++pass) q = orthonormal_basis(k * q);

  Matrix t = q.transpose() * k * q;
  t = 0.5 * (t + t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
  if (eig.info() != Eigen::Success) throw NumericalError("lowrank_approx: Rayleigh-Ritz eigensolver failed");

  // Eigen sorts ascending; take the top `rank` in descending order.
  LowRankFactors out;
  out.u.resize(d, rank);
  out.lambda.resize(rank);
  for (Index j = 0; j < rank; ++j) {
    const Index src = width - 1 - j;
    out.lambda[j] = eig.eigenvalues()[src];
    out.u.col(j) = q * eig.eigenvectors().col(src);
  }
  return out;
}

Matrix permute_symmetric(const Matrix& k, const std::vector<Index>& perm) {
  const Index d = k.rows();
  require_same_dim(d, static_cast<Index>(perm.size()), "permute_symmetric");
  Matrix out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) out(i, j) = k(perm[i], perm[j]);
  }
  return out;
}

namespace {

// Drops non-positive directions and those below 1e-14 max(lambda).
LowRankFactors drop_negligible(LowRankFactors f) {
  if (f.rank() == 0) return f;
  const double top = f.lambda.maxCoeff();
  std::vector<Index> keep;
  for (Index j = 0; j < f.rank(); ++j) {
    if (top > 0.0 && f.lambda[j] > 0.0 && f.lambda[j] >= 1e-14 * top) keep.push_back(j);
  }
  if (static_cast<Index>(keep.size()) == f.rank()) return f;
  LowRankFactors out;
  out.u.resize(f.u.rows(), static_cast<Index>(keep.size()));
  out.lambda.resize(static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.u.col(static_cast<Index>(c)) = f.u.col(keep[c]);
    out.lambda[static_cast<Index>(c)] = f.lambda[keep[c]];
  }
  return out;
}

BlockDiagonalPreconditioner pinch_residual(const KernelSystem& system, const Clustering& clustering,
                                           const LowRankFactors& f) {
  if (static_cast<Index>(clustering.permutation.size()) != system.dim()) {
    throw DimensionError("geometric preconditioner: clustering does not cover the system");
  }
  const auto& perm = clustering.permutation;
  const auto& offsets = clustering.offsets;
  std::vector<Matrix> blocks;
  blocks.reserve(offsets.size() - 1);
  for (std::size_t m = 0; m + 1 < offsets.size(); ++m) {
    const Index lo = offsets[m];
    const Index n = offsets[m + 1] - lo;
    Matrix b(n, n);
    for (Index c = 0; c < n; ++c) {
      for (Index r = 0; r < n; ++r) b(r, c) = system.gram(perm[lo + r], perm[lo + c]);
    }
    if (f.rank() > 0) {
      const auto ub = f.u.middleRows(lo, n);
      b.noalias() -= ub * f.lambda.asDiagonal() * ub.transpose();
    }
    b.diagonal().array() += system.noise;
    blocks.push_back(std::move(b));
  }
  return BlockDiagonalPreconditioner(std::move(blocks), perm, "geo-block");
}

}  // namespace

GeometricPreconditioner::GeometricPreconditioner(const KernelSystem& system, const Clustering& clustering,
                                                 LowRankFactors factors)
    : blocks_(pinch_residual(system, clustering, factors = drop_negligible(std::move(factors)))),
      u_(std::move(factors.u)),
      lambda_(std::move(factors.lambda)) {
  if (u_.cols() == 0) return;
  binv_u_ = u_;
  blocks_.solve_permuted(binv_u_);
  Matrix cap = u_.transpose() * binv_u_;
  cap.diagonal() += lambda_.cwiseInverse();
  capacitance_.compute(cap);
  if (capacitance_.info() != Eigen::Success) {
    throw NumericalError("Woodbury capacitance matrix not positive definite");
  }
}

std::string GeometricPreconditioner::label() const {
  return rank() == 0 ? "geo-block" : "geo-lowrank-" + std::to_string(rank());
}

void GeometricPreconditioner::solve(const Vector& v, Vector& out) const {
  const auto perm = blocks_.permutation();
  const Index d = dim();
  Vector y(d);
  for (Index i = 0; i < d; ++i) y[i] = v[perm[i]];
  blocks_.solve_permuted(y);
  if (rank() > 0) {
    const Vector c = capacitance_.solve(u_.transpose() * y);
    y.noalias() -= binv_u_ * c;
  }
  out.resize(d);
  for (Index i = 0; i < d; ++i) out[perm[i]] = y[i];
}

double GeometricPreconditioner::apply_flops() const {
  double flops = 2.0 * static_cast<double>(dim());
  const auto offsets = blocks_.offsets();
  for (std::size_t m = 0; m + 1 < offsets.size(); ++m) {
    const double n = static_cast<double>(offsets[m + 1] - offsets[m]);
    flops += 2.0 * n * n;
  }
  const double r = static_cast<double>(rank());
  flops += 4.0 * static_cast<double>(dim()) * r + 2.0 * r * r;
  return flops;
}

Matrix GeometricPreconditioner::materialize() const {
  Matrix mp = blocks_.materialize_permuted();
  if (rank() > 0) mp.noalias() += u_ * lambda_.asDiagonal() * u_.transpose();
  const auto perm = blocks_.permutation();
  const Index d = dim();
  Matrix out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) out(perm[i], perm[j]) = mp(i, j);
  }
  return out;
}

GeometricPreconditioner geometric_block_precond(const KernelSystem& system, const Clustering& clustering) {
  return GeometricPreconditioner(system, clustering, LowRankFactors{Matrix(system.dim(), 0), Vector(0)});
}

GeometricPreconditioner geometric_lowrank_precond(const KernelSystem& system, const Clustering& clustering,
                                                  Index rank, RandomStream& rng) {
  const Matrix kperm = permute_symmetric(system.gram, clustering.permutation);
  return GeometricPreconditioner(system, clustering, lowrank_approx(kperm, rank, rng));
}

}  // namespace stabsel
