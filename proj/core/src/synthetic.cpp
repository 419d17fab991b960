#include "stabsel/synthetic.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace stabsel {

namespace {

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) out.push_back(field);
  return out;
}

Index parse_positive(const std::string& field, const std::string& spec) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(field, &used);
    if (used == field.size() && v > 0) return static_cast<Index>(v);
  } catch (const std::logic_error&) {
  }
  throw ConfigError("bad integer '" + field + "' in generator '" + spec + "'");
}

}  // namespace

SparseMatrixCSR tridiagonal_spd(Index dim) {
  if (dim < 1) throw ArgumentError("tridiagonal_spd: dim must be positive");
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(3 * dim));
  for (Index i = 0; i < dim; ++i) {
    if (i > 0) t.push_back({i, i - 1, -1.0});
    t.push_back({i, i, 2.0});
    if (i + 1 < dim) t.push_back({i, i + 1, -1.0});
  }
  return SparseMatrixCSR::from_triplets(dim, t);
}

SparseMatrixCSR block_structured_spd(Index dim, Index block_size, RandomStream& rng) {
  if (dim < 1 || block_size < 1) throw ArgumentError("block_structured_spd: dim and block size must be positive");
  RandomStream local = rng.split();
  const Index blocks = (dim + block_size - 1) / block_size;
  std::vector<double> scale(blocks);
  for (auto& s : scale) s = std::pow(10.0, -2.0 + 4.0 * local.uniform());

  std::vector<Triplet> t;
  Vector degree = Vector::Zero(dim);
  auto add_edge = [&](Index i, Index j, double w) {
    t.push_back({i, j, -w});
    t.push_back({j, i, -w});
    degree[i] += w;
    degree[j] += w;
  };
  for (Index b = 0; b < blocks; ++b) {
    const Index lo = b * block_size;
    const Index hi = std::min(dim, lo + block_size);
    for (Index i = lo; i < hi; ++i) {
      for (Index j = i + 1; j < hi; ++j) {
        if (j == i + 1 || local.uniform() < 0.3) add_edge(i, j, scale[b] * (0.5 + local.uniform()));
      }
    }
    if (hi < dim) {
      const double w = 1e-2 * std::sqrt(scale[b] * scale[b + 1]);
      add_edge(hi - 1, hi, w);
      const Index i = lo + static_cast<Index>(local.uniform_index(static_cast<std::uint64_t>(hi - lo)));
      const Index j = hi + static_cast<Index>(local.uniform_index(static_cast<std::uint64_t>(
                               std::min(dim, hi + block_size) - hi)));
      if (!(i == hi - 1 && j == hi)) add_edge(i, j, w);
    }
  }
  for (Index i = 0; i < dim; ++i) t.push_back({i, i, degree[i] + 1e-2 * scale[i / block_size]});
  return SparseMatrixCSR::from_triplets(dim, t);
}

Matrix random_spd(Index dim, RandomStream& rng) {
  const Matrix b = gaussian_matrix(dim, dim, 1.0 / static_cast<double>(dim), rng);
  Matrix a = b.transpose() * b;
  a.diagonal().array() += 1.0;
  return 0.5 * (a + a.transpose());
}

Dataset blob_dataset(Index size, Index features, Index blobs, RandomStream& rng, double center_spread) {
  if (size < 1 || features < 1 || blobs < 1) throw ArgumentError("blob_dataset: sizes must be positive");
  RandomStream local = rng.split();
  const Matrix centers = gaussian_matrix(blobs, features, center_spread * center_spread, local);
  Dataset data;
  data.points.resize(size, features);
  data.targets.resize(size);
  for (Index i = 0; i < size; ++i) {
    const Index c = i % blobs;
    for (Index f = 0; f < features; ++f) data.points(i, f) = centers(c, f) + local.normal();
    data.targets[i] = std::sin(data.points.row(i).sum()) + 0.1 * local.normal();
  }
  return data;
}

SparseMatrixCSR generate_matrix(const std::string& spec, std::uint64_t seed) {
  const auto f = split_fields(spec);
  RandomStream rng(seed, 0x5eed);
  if (f.size() == 2 && f[0] == "tridiag") return tridiagonal_spd(parse_positive(f[1], spec));
  if (f.size() == 3 && f[0] == "blocks") {
    return block_structured_spd(parse_positive(f[1], spec), parse_positive(f[2], spec), rng);
  }
  if (f.size() == 2 && f[0] == "randspd") {
    return SparseMatrixCSR::from_dense(random_spd(parse_positive(f[1], spec), rng));
  }
  throw ConfigError("unknown matrix generator '" + spec + "' (tridiag:<d>, blocks:<d>:<block>, randspd:<d>)");
}

Dataset generate_dataset(const std::string& spec, std::uint64_t seed) {
  const auto f = split_fields(spec);
  if (f.size() == 4 && f[0] == "blobs") {
    RandomStream rng(seed, 0xb10b);
    return blob_dataset(parse_positive(f[1], spec), parse_positive(f[2], spec), parse_positive(f[3], spec), rng);
  }
  throw ConfigError("unknown dataset generator '" + spec + "' (blobs:<d>:<p>:<nblobs>)");
}

}  // namespace stabsel
