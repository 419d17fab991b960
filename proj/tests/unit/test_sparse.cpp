#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "stabsel/matrix_market.hpp"
#include "stabsel/random.hpp"
#include "stabsel/sparse.hpp"

using namespace stabsel;

TEST(Spmv, IdentityLeavesVectorUnchanged) {
  const auto a = SparseMatrixCSR::identity(3);
  const Vector x = Vector::LinSpaced(3, 1.0, 3.0);
  EXPECT_EQ(spmv(a, x), x);
}

TEST(Spmv, Diagonal) {
  const std::vector<Triplet> t{{0, 0, 2.0}, {1, 1, 3.0}};
  const auto a = SparseMatrixCSR::from_triplets(2, t);
  EXPECT_EQ(spmv(a, Vector::Ones(2)), Vector((Vector(2) << 2.0, 3.0).finished()));
}

TEST(Spmv, MatchesDenseMultiply) {
  const auto a = fixtures::random_sparse(5, 12, 3);
  const Vector x = (Vector(5) << 0.5, -1.0, 2.0, 0.25, 3.0).finished();
  const Vector expected = a.to_dense() * x;
  EXPECT_LE((spmv(a, x) - expected).norm(), 1e-14 * expected.norm());
}

TEST(Spmv, ReconstructsColumnsOnRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = fixtures::random_sparse(8, 20, seed);
    const Matrix dense = a.to_dense();
    for (Index j = 0; j < 8; ++j) {
      EXPECT_EQ(spmv(a, Vector::Unit(8, j)), Vector(dense.col(j))) << "seed " << seed << " column " << j;
    }
  }
}

TEST(Spmv, RejectsDimensionMismatch) {
  const auto a = SparseMatrixCSR::identity(3);
  EXPECT_THROW(spmv(a, Vector::Ones(4)), DimensionError);
}

TEST(Csr, ValidatesInvariants) {
  EXPECT_THROW(SparseMatrixCSR(2, {0, 1}, {0}, {1.0}), DimensionError);  // row_ptr length
  EXPECT_THROW(SparseMatrixCSR(2, {1, 1, 2}, {0, 1}, {1.0, 1.0}), ArgumentError);    // row_ptr[0] != 0
  EXPECT_THROW(SparseMatrixCSR(2, {0, 2, 1}, {0, 1}, {1.0, 1.0}), ArgumentError);    // decreasing
  EXPECT_THROW(SparseMatrixCSR(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), ArgumentError);    // unsorted columns
  EXPECT_THROW(SparseMatrixCSR(2, {0, 1, 2}, {0, 2}, {1.0, 1.0}), ArgumentError);    // column out of range
  EXPECT_THROW(SparseMatrixCSR(2, {0, 1, 2}, {0, 1}, {1.0, std::nan("")}), ArgumentError);
  EXPECT_NO_THROW(SparseMatrixCSR(2, {0, 1, 2}, {0, 1}, {1.0, 1.0}));
}

TEST(Csr, TripletsSumDuplicates) {
  const std::vector<Triplet> t{{1, 0, 1.0}, {0, 0, 1.0}, {1, 0, 2.5}, {0, 0, 1.0}};
  const auto a = SparseMatrixCSR::from_triplets(2, t);
  EXPECT_EQ(a.nnz(), 2);
  EXPECT_DOUBLE_EQ(a.coeff(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(a.coeff(1, 0), 3.5);
  EXPECT_DOUBLE_EQ(a.coeff(0, 1), 0.0);
}

TEST(Csr, PermutedMatchesDenseComposition) {
  const auto a = fixtures::random_sparse(6, 18, 4);
  const std::vector<Index> perm{3, 0, 5, 1, 4, 2};
  Matrix p = Matrix::Zero(6, 6);
  for (Index i = 0; i < 6; ++i) p(i, perm[i]) = 1.0;
  const Matrix expected = p * a.to_dense() * p.transpose();
  EXPECT_EQ(a.permuted(perm).to_dense(), expected);
}

TEST(Csr, InvertPermutationRejectsNonBijection) {
  const std::vector<Index> bad{0, 0, 1};
  EXPECT_THROW(invert_permutation(bad), ArgumentError);
  const std::vector<Index> good{2, 0, 1};
  EXPECT_EQ(invert_permutation(good), (std::vector<Index>{1, 2, 0}));
}

TEST(MatrixMarket, ExpandsSymmetricStorage) {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment\n"
      "2 2 3\n1 1 2\n2 1 1\n2 2 2\n");
  const auto a = read_matrix_market(in);
  EXPECT_EQ(a.nnz(), 4);
  EXPECT_DOUBLE_EQ(a.coeff(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(a.coeff(1, 0), 1.0);
}

TEST(MatrixMarket, SumsDuplicates) {
  std::istringstream in("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 1\n");
  EXPECT_DOUBLE_EQ(read_matrix_market(in).coeff(0, 0), 2.0);
}

TEST(MatrixMarket, RejectsNonSquare) {
  std::istringstream in("%%MatrixMarket matrix coordinate real general\n3 4 1\n1 1 1\n");
  try {
    read_matrix_market(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("non-square"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(MatrixMarket, RejectsUnsupportedFieldsWithLineNumbers) {
  const char* cases[] = {
      "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n",
      "%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n",
      "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n",
      "%%NotMatrixMarket\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n",
  };
  for (const char* text : cases) {
    std::istringstream in(text);
    try {
      read_matrix_market(in);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1u) << text;
      EXPECT_NE(std::string(e.what()).find("line "), std::string::npos) << e.what();
    }
  }
}

TEST(MatrixMarket, WriteThenReadRoundTrip) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = fixtures::random_sparse(7, 25, seed);
    std::stringstream buffer;
    write_matrix_market(buffer, a);
    const auto b = read_matrix_market(buffer);
    ASSERT_EQ(b.dim(), a.dim());
    EXPECT_TRUE(std::equal(a.row_ptr().begin(), a.row_ptr().end(), b.row_ptr().begin()));
    EXPECT_TRUE(std::equal(a.col_idx().begin(), a.col_idx().end(), b.col_idx().begin()));
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  }
}

TEST(GaussianMatrix, DeterministicForASeed) {
  RandomStream r1(42), r2(42);
  EXPECT_EQ(gaussian_matrix(20, 5, 0.2, r1), gaussian_matrix(20, 5, 0.2, r2));
  RandomStream r3(43);
  EXPECT_NE(gaussian_matrix(20, 5, 0.2, r1), gaussian_matrix(20, 5, 0.2, r3));
}

TEST(GaussianMatrix, SuccessiveDrawsDiffer) {
  RandomStream rng(1);
  EXPECT_NE(gaussian_matrix(10, 3, 1.0, rng), gaussian_matrix(10, 3, 1.0, rng));
}

TEST(GaussianMatrix, MeanAndVariance) {
  RandomStream rng(7);
  const double scale = 1.0 / 50.0;
  const Matrix q = gaussian_matrix(1000, 50, scale, rng);
  const double n = static_cast<double>(q.size());
  const double mean = q.mean();
  EXPECT_LE(std::abs(mean), 4.0 * std::sqrt(scale / n));
  const double var = (q.array() - mean).square().sum() / (n - 1.0);
  EXPECT_NEAR(var, scale, 0.1 * scale);
}

TEST(GaussianMatrix, ColumnsAreUncorrelated) {
  RandomStream rng(9);
  const Index d = 20000;
  const Matrix q = gaussian_matrix(d, 4, 1.0, rng);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i + 1; j < 4; ++j) {
      const double corr = q.col(i).dot(q.col(j)) / (q.col(i).norm() * q.col(j).norm());
      EXPECT_LE(std::abs(corr), 5.0 / std::sqrt(static_cast<double>(d))) << i << "," << j;
    }
  }
}

TEST(GaussianMatrix, RejectsBadArguments) {
  RandomStream rng(0);
  EXPECT_THROW(gaussian_matrix(0, 1, 1.0, rng), ArgumentError);
  EXPECT_THROW(gaussian_matrix(1, 0, 1.0, rng), ArgumentError);
  EXPECT_THROW(gaussian_matrix(1, 1, 0.0, rng), ArgumentError);
}

TEST(RandomStream, SubstreamsDependOnlyOnIdentity) {
  const RandomStream root(5);
  RandomStream a = root.substream(3);
  RandomStream b = RandomStream(5).substream(3);
  EXPECT_EQ(a.normal(), b.normal());
  RandomStream c = root.substream(4);
  RandomStream d = root.substream(3);
  EXPECT_NE(c.normal(), d.normal());
}
