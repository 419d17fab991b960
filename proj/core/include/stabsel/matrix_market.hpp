#pragma once

#include <filesystem>
#include <iosfwd>

#include "stabsel/sparse.hpp"

namespace stabsel {

/// Reads a square real Matrix Market coordinate file (general or symmetric).
/// Symmetric storage is expanded to full storage and duplicate entries are
/// summed. Errors carry the offending line number.
SparseMatrixCSR read_matrix_market(const std::filesystem::path& path);
SparseMatrixCSR read_matrix_market(std::istream& in);

/// Writes `a` as `coordinate real general` with 1-based indices and
/// round-trip precision.
void write_matrix_market(const std::filesystem::path& path, const SparseMatrixCSR& a);
void write_matrix_market(std::ostream& out, const SparseMatrixCSR& a);

}  // namespace stabsel
