#pragma once

#include <vector>

#include "stabsel/sparse.hpp"

namespace stabsel {

/// Reverse Cuthill-McKee ordering of the undirected graph of A + A^T.
///
/// Returns `perm` with perm[i] = the original index placed at position i, so
/// `a.permuted(perm)` is the reordered matrix. Each connected component is
/// traversed breadth-first from a pseudo-peripheral vertex found by repeated
/// BFS sweeps (George-Liu); neighbours are visited by increasing degree, ties
/// by lowest index. The concatenated order is reversed at the end.
std::vector<Index> rcm_ordering(const SparseMatrixCSR& a);

}  // namespace stabsel
