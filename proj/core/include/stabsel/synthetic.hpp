#pragma once

#include <string>

#include "stabsel/kernel.hpp"
#include "stabsel/random.hpp"
#include "stabsel/sparse.hpp"

namespace stabsel {

/// Tridiagonal SPD matrix with 2 on the diagonal and -1 off it.
SparseMatrixCSR tridiagonal_spd(Index dim);

/// Block-dominant SPD matrix: a weighted graph Laplacian whose contiguous
/// blocks of `block_size` nodes are densely connected with a per-block scale
/// 10^U(-2, 2), joined by weak edges between neighbouring blocks, plus a small
/// positive diagonal shift.
SparseMatrixCSR block_structured_spd(Index dim, Index block_size, RandomStream& rng);

/// Dense B^T B + I with B having N(0, 1/dim) entries.
Matrix random_spd(Index dim, RandomStream& rng);

/// `points` drawn around `blobs` centers in R^p; targets sin(sum x) plus
/// N(0, 0.01) noise.
Dataset blob_dataset(Index size, Index features, Index blobs, RandomStream& rng,
                     double center_spread = 10.0);

/// Parses "tridiag:<d>", "blocks:<d>:<block>" or "randspd:<d>" and builds the
/// matrix from `seed`.
SparseMatrixCSR generate_matrix(const std::string& spec, std::uint64_t seed);

/// Parses "blobs:<d>:<p>:<nblobs>" and builds the dataset from `seed`.
Dataset generate_dataset(const std::string& spec, std::uint64_t seed);

}  // namespace stabsel
