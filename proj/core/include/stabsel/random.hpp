#pragma once

#include <cstdint>
#include <random>

#include "stabsel/types.hpp"

namespace stabsel {

/// Seeded, splittable random stream.
///
/// A stream is identified by (seed, stream id). Children derived with
/// `substream(i)` depend only on the parent's identity and `i`, so work that is
/// split across threads by index draws the same numbers as a serial run.
/// `split()` hands out children with consecutive indices and advances the
/// parent, which is how repeated sketches from one stream stay distinct.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  RandomStream substream(std::uint64_t index) const;
  RandomStream split() { return substream(splits_++); }

  /// Standard normal variate.
  double normal() { return normal_(engine_); }
  /// Uniform variate on [0, 1).
  double uniform() { return uniform_(engine_); }
  /// Uniform integer on [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t splits_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// d x k matrix with i.i.d. N(0, scale) entries. Column j is drawn from
/// substream j of a single `rng.split()`, so the result is a pure function of
/// the stream state and columns can be generated independently.
Matrix gaussian_matrix(Index rows, Index cols, double scale, RandomStream& rng);

/// Vector of i.i.d. N(0, 1) entries drawn from `rng.split()`.
Vector gaussian_vector(Index dim, RandomStream& rng);

}  // namespace stabsel
