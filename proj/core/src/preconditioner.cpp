#include "stabsel/preconditioner.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "stabsel/rcm.hpp"

namespace stabsel {

namespace {

void check_offsets(Index dim, const std::vector<Index>& offsets) {
  if (offsets.size() < 2 || offsets.front() != 0 || offsets.back() != dim) {
    throw ArgumentError("block offsets must run from 0 to dim");
  }
  for (std::size_t m = 1; m < offsets.size(); ++m) {
    if (offsets[m] <= offsets[m - 1]) throw ArgumentError("block offsets must be strictly increasing");
  }
}

void check_perm(Index dim, const std::vector<Index>& perm) {
  if (perm.empty()) return;
  require_same_dim(dim, static_cast<Index>(perm.size()), "block preconditioner permutation");
  invert_permutation(perm);
}

}  // namespace

IdentityPreconditioner::IdentityPreconditioner(Index dim) : dim_(dim) {
  if (dim < 1) throw ArgumentError("IdentityPreconditioner: dim must be positive");
}

BlockDiagonalPreconditioner::BlockDiagonalPreconditioner(const SparseMatrixCSR& a,
                                                         std::vector<Index> perm,
                                                         std::vector<Index> offsets,
                                                         std::string label)
    : dim_(a.dim()), perm_(std::move(perm)), offsets_(std::move(offsets)), label_(std::move(label)) {
  check_perm(dim_, perm_);
  check_offsets(dim_, offsets_);

  std::vector<Index> inv;
  if (!perm_.empty()) inv = invert_permutation(perm_);
  // block_of[new index] = block number
  std::vector<Index> block_of(dim_);
  for (std::size_t m = 0; m + 1 < offsets_.size(); ++m) {
    std::fill(block_of.begin() + offsets_[m], block_of.begin() + offsets_[m + 1], static_cast<Index>(m));
  }

  std::vector<Matrix> blocks;
  blocks.reserve(offsets_.size() - 1);
  for (std::size_t m = 0; m + 1 < offsets_.size(); ++m) {
    const Index n = offsets_[m + 1] - offsets_[m];
    blocks.emplace_back(Matrix::Zero(n, n));
  }
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto vals = a.values();
  for (Index i = 0; i < dim_; ++i) {
    const Index src = perm_.empty() ? i : perm_[i];
    const Index m = block_of[i];
    const Index lo = offsets_[m];
    for (Index p = rp[src]; p < rp[src + 1]; ++p) {
      const Index j = perm_.empty() ? ci[p] : inv[ci[p]];
      if (block_of[j] == m) blocks[m](i - lo, j - lo) = vals[p];
    }
  }
  factor_blocks(std::move(blocks));
}

BlockDiagonalPreconditioner::BlockDiagonalPreconditioner(const Matrix& k, double shift,
                                                         std::vector<Index> perm,
                                                         std::vector<Index> offsets,
                                                         std::string label)
    : dim_(k.rows()), perm_(std::move(perm)), offsets_(std::move(offsets)), label_(std::move(label)) {
  if (k.rows() != k.cols()) throw DimensionError("BlockDiagonalPreconditioner: matrix is not square");
  check_perm(dim_, perm_);
  check_offsets(dim_, offsets_);
  std::vector<Matrix> blocks;
  blocks.reserve(offsets_.size() - 1);
  for (std::size_t m = 0; m + 1 < offsets_.size(); ++m) {
    const Index lo = offsets_[m];
    const Index n = offsets_[m + 1] - lo;
    Matrix b(n, n);
    for (Index c = 0; c < n; ++c) {
      const Index cj = perm_.empty() ? lo + c : perm_[lo + c];
      for (Index r = 0; r < n; ++r) {
        const Index ri = perm_.empty() ? lo + r : perm_[lo + r];
        b(r, c) = k(ri, cj);
      }
      b(c, c) += shift;
    }
    blocks.push_back(std::move(b));
  }
  factor_blocks(std::move(blocks));
}

BlockDiagonalPreconditioner::BlockDiagonalPreconditioner(std::vector<Matrix> blocks,
                                                         std::vector<Index> perm, std::string label)
    : perm_(std::move(perm)), label_(std::move(label)) {
  if (blocks.empty()) throw ArgumentError("BlockDiagonalPreconditioner: no blocks");
  offsets_.push_back(0);
  for (const auto& b : blocks) {
    if (b.rows() != b.cols() || b.rows() < 1) throw DimensionError("BlockDiagonalPreconditioner: bad block");
    offsets_.push_back(offsets_.back() + b.rows());
  }
  dim_ = offsets_.back();
  check_perm(dim_, perm_);
  factor_blocks(std::move(blocks));
}

void BlockDiagonalPreconditioner::factor_blocks(std::vector<Matrix> blocks) {
  factors_.clear();
  factors_.reserve(blocks.size());
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    factors_.emplace_back(blocks[m]);
    if (factors_.back().info() != Eigen::Success) {
      throw NumericalError("block not positive definite, block index " + std::to_string(m));
    }
  }
}

void BlockDiagonalPreconditioner::solve_permuted(Vector& z) const {
  for (std::size_t m = 0; m < factors_.size(); ++m) {
    const Index lo = offsets_[m];
    const Index n = offsets_[m + 1] - lo;
    factors_[m].solveInPlace(z.segment(lo, n));
  }
}

void BlockDiagonalPreconditioner::solve_permuted(Matrix& z) const {
  for (std::size_t m = 0; m < factors_.size(); ++m) {
    const Index lo = offsets_[m];
    const Index n = offsets_[m + 1] - lo;
    factors_[m].solveInPlace(z.middleRows(lo, n));
  }
}

void BlockDiagonalPreconditioner::solve(const Vector& v, Vector& out) const {
  if (perm_.empty()) {
    out = v;
    solve_permuted(out);
    return;
  }
  Vector z(dim_);
  for (Index i = 0; i < dim_; ++i) z[i] = v[perm_[i]];
  solve_permuted(z);
  out.resize(dim_);
  for (Index i = 0; i < dim_; ++i) out[perm_[i]] = z[i];
}

Matrix BlockDiagonalPreconditioner::materialize_permuted() const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (std::size_t b = 0; b < factors_.size(); ++b) {
    const Index lo = offsets_[b];
    const Index n = offsets_[b + 1] - lo;
    const Matrix l = factors_[b].matrixL();
    m.block(lo, lo, n, n) = l * l.transpose();
  }
  return m;
}

Matrix BlockDiagonalPreconditioner::materialize() const {
  const Matrix mp = materialize_permuted();
  if (perm_.empty()) return mp;
  Matrix out(dim_, dim_);
  for (Index j = 0; j < dim_; ++j) {
    for (Index i = 0; i < dim_; ++i) out(perm_[i], perm_[j]) = mp(i, j);
  }
  return out;
}

std::vector<Index> uniform_block_offsets(Index dim, Index block_size) {
  if (dim < 1) throw ArgumentError("uniform_block_offsets: dim must be positive");
  if (block_size < 1) throw ArgumentError("block size must be >= 1");
  std::vector<Index> offsets;
  for (Index lo = 0; lo < dim; lo += block_size) offsets.push_back(lo);
  offsets.push_back(dim);
  return offsets;
}

BlockDiagonalPreconditioner block_pinch(const SparseMatrixCSR& a, Index block_size) {
  return BlockDiagonalPreconditioner(a, {}, uniform_block_offsets(a.dim(), block_size),
                                     "Blk_" + std::to_string(block_size));
}

BlockDiagonalPreconditioner rcm_block_pinch(const SparseMatrixCSR& a, Index block_size) {
  return BlockDiagonalPreconditioner(a, rcm_ordering(a), uniform_block_offsets(a.dim(), block_size),
                                     "RCM_" + std::to_string(block_size));
}

std::string CandidateSpec::label() const {
  switch (kind) {
    case Kind::identity:
      return "I";
    case Kind::blk:
      return "Blk_" + std::to_string(block_size);
    case Kind::rcm:
      return "RCM_" + std::to_string(block_size);
  }
  return "?";
}

CandidateSpec CandidateSpec::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  if (s == "i" || s == "identity" || s == "none") return {Kind::identity, 1};
  const auto colon = s.find_first_of(":_");
  if (colon == std::string::npos) throw ConfigError("bad candidate '" + text + "'");
  const std::string kind = s.substr(0, colon);
  const std::string size = s.substr(colon + 1);
  CandidateSpec spec;
  if (kind == "blk") {
    spec.kind = Kind::blk;
  } else if (kind == "rcm") {
    spec.kind = Kind::rcm;
  } else {
    throw ConfigError("unknown candidate kind '" + kind + "'");
  }
  try {
    std::size_t used = 0;
    spec.block_size = std::stoll(size, &used);
    if (used != size.size()) throw ConfigError("bad block size in '" + text + "'");
  } catch (const std::logic_error&) {
    throw ConfigError("bad block size in '" + text + "'");
  }
  if (spec.block_size < 1) throw ConfigError("block size must be >= 1 in '" + text + "'");
  return spec;
}

std::unique_ptr<Preconditioner> build_candidate(const SparseMatrixCSR& a, const CandidateSpec& spec) {
  switch (spec.kind) {
    case CandidateSpec::Kind::identity:
      return std::make_unique<IdentityPreconditioner>(a.dim());
    case CandidateSpec::Kind::blk:
      return std::make_unique<BlockDiagonalPreconditioner>(block_pinch(a, spec.block_size));
    case CandidateSpec::Kind::rcm:
      return std::make_unique<BlockDiagonalPreconditioner>(rcm_block_pinch(a, spec.block_size));
  }
  throw ConfigError("unknown candidate kind");
}

}  // namespace stabsel
