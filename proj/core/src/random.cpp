#include "stabsel/random.hpp"

#include <cmath>

namespace stabsel {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  auto seq = make_seed_seq(seed, stream);
  engine_.seed(seq);
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(seed_, mix64(mix64(stream_) ^ (index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw ArgumentError("uniform_index: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Matrix gaussian_matrix(Index rows, Index cols, double scale, RandomStream& rng) {
  if (rows < 1 || cols < 1) throw ArgumentError("gaussian_matrix: rows and cols must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ArgumentError("gaussian_matrix: scale must be positive");
  }
  const double sd = std::sqrt(scale);
  const RandomStream base = rng.split();
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    RandomStream col = base.substream(static_cast<std::uint64_t>(j));
    for (Index i = 0; i < rows; ++i) out(i, j) = sd * col.normal();
  }
  return out;
}

Vector gaussian_vector(Index dim, RandomStream& rng) {
  if (dim < 1) throw ArgumentError("gaussian_vector: dim must be >= 1");
  RandomStream s = rng.split();
  Vector out(dim);
  for (Index i = 0; i < dim; ++i) out(i) = s.normal();
  return out;
}

}  // namespace stabsel
