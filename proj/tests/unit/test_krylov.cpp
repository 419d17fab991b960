#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "stabsel/krylov.hpp"
#include "stabsel/synthetic.hpp"

using namespace stabsel;

namespace {

StoppingRule relative(double tol) {
  StoppingRule rule;
  rule.relative_tol = tol;
  return rule;
}

double condition_number(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  return eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
}

}  // namespace

TEST(Pcg, IdentitySystemTakesOneIteration) {
  const auto a = SparseMatrixCSR::identity(10);
  const SparseOperator op(a);
  RandomStream rng(1);
  const Vector b = gaussian_vector(10, rng);
  const auto r = pcg_solve(op, IdentityPreconditioner(10), b, relative(1e-12));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_LE((r.x - b).norm(), 1e-14 * b.norm());
}

TEST(Pcg, MatchesDenseDirectSolve) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix dense = fixtures::random_spd_dense(20, seed);
    const auto a = SparseMatrixCSR::from_dense(dense);
    const SparseOperator op(a);
    RandomStream rng(seed + 10);
    const Vector b = gaussian_vector(20, rng);
    const auto r = pcg_solve(op, IdentityPreconditioner(20), b, relative(1e-12));
    ASSERT_TRUE(r.converged);
    EXPECT_LE(fixtures::relative_error(r.x, dense.llt().solve(b)), 1e-8);
  }
}

TEST(Pcg, ThreeDistinctEigenvaluesConvergeInThreeSteps) {
  RandomStream rng(3);
  const Index d = 30;
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(d, d, 1.0, rng));
  const Matrix u = qr.householderQ();
  Vector lambda(d);
  for (Index i = 0; i < d; ++i) lambda[i] = i % 3 == 0 ? 1.0 : (i % 3 == 1 ? 4.0 : 10.0);
  const Matrix dense = u * lambda.asDiagonal() * u.transpose();
  const DenseShiftedOperator op(dense, 0.0);
  const Vector b = gaussian_vector(d, rng);
  const auto r = pcg_solve(op, IdentityPreconditioner(d), b, relative(1e-10));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 3);
}

TEST(Pcg, ExactPreconditionerTakesOneIteration) {
  const auto a = fixtures::random_spd_sparse(25, 4);
  const SparseOperator op(a);
  RandomStream rng(4);
  const Vector b = gaussian_vector(25, rng);
  const auto r = pcg_solve(op, block_pinch(a, 25), b, relative(1e-10));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1);
}

TEST(Pcg, HistoryAndApplyCounts) {
  const auto a = tridiagonal_spd(80);
  const SparseOperator op(a);
  const auto m = block_pinch(a, 4);
  RandomStream rng(5);
  const Vector b = gaussian_vector(80, rng);
  m.reset_solve_count();
  const auto r = pcg_solve(op, m, b, relative(1e-9));
  ASSERT_TRUE(r.converged);
  ASSERT_EQ(static_cast<Index>(r.residual_history.size()), r.iterations);
  EXPECT_EQ(r.residual_history.back(), r.final_residual_norm);
  EXPECT_LE(r.final_residual_norm, r.tolerance);
  EXPECT_EQ(static_cast<Index>(r.preconditioner_applies), r.iterations);
  EXPECT_EQ(m.solve_count(), r.preconditioner_applies);
  // One product per iteration plus the explicit residual at exit.
  EXPECT_EQ(static_cast<Index>(op.apply_count()), r.iterations + 1);
  EXPECT_LE(r.true_residual_norm, 10.0 * r.tolerance);
  EXPECT_FALSE(r.warning.has_value());
}

TEST(Pcg, NonConvergenceIsReportedNotThrown) {
  const auto a = tridiagonal_spd(200);
  const SparseOperator op(a);
  RandomStream rng(6);
  const Vector b = gaussian_vector(200, rng);
  StoppingRule rule = relative(1e-12);
  rule.max_iterations = 5;
  const auto r = pcg_solve(op, IdentityPreconditioner(200), b, rule);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_EQ(r.residual_history.size(), 5u);
}

TEST(Pcg, IndefiniteOperatorIsABreakdown) {
  Matrix dense = Matrix::Identity(4, 4);
  dense(0, 0) = -1.0;
  const auto a = SparseMatrixCSR::from_dense(dense);
  const SparseOperator op(a);
  try {
    pcg_solve(op, IdentityPreconditioner(4), Vector::Unit(4, 0), relative(1e-10));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("not positive definite at iteration 1"), std::string::npos) << e.what();
  }
}

TEST(Pcg, ToleranceUsesEitherCriterion) {
  StoppingRule rule;
  rule.relative_tol = 1e-3;
  rule.absolute_tol = 0.5;
  EXPECT_DOUBLE_EQ(rule.threshold(10.0), 0.5);
  EXPECT_DOUBLE_EQ(rule.threshold(1e4), 10.0);
  rule.relative_tol.reset();
  EXPECT_DOUBLE_EQ(rule.threshold(1e4), 0.5);
  rule.absolute_tol.reset();
  EXPECT_THROW(rule.validate(), ArgumentError);
  StoppingRule cap;
  cap.max_iterations = 0;
  EXPECT_THROW(cap.validate(), ArgumentError);
}

TEST(Pcg, StartsFromInitialGuess) {
  const auto a = fixtures::random_spd_sparse(15, 7);
  const SparseOperator op(a);
  const Vector x = Vector::LinSpaced(15, -1.0, 1.0);
  const Vector b = a.multiply(x);
  const auto r = pcg_solve(op, IdentityPreconditioner(15), b, relative(1e-10), x);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Pcg, BetterConditionedPreconditionerStaysWithinEnvelope) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream gen(seed);
    const auto a = block_structured_spd(120, 10, gen);
    const SparseOperator op(a);
    RandomStream rng(seed + 100);
    const Vector b = gaussian_vector(120, rng);
    const auto none = pcg_solve(op, IdentityPreconditioner(120), b, relative(1e-9));
    const Matrix dense = a.to_dense();
    for (Index l : {Index{5}, Index{10}, Index{120}}) {
      const auto m = block_pinch(a, l);
      const Eigen::LLT<Matrix> chol(m.materialize());
      const Matrix l_inv = chol.matrixL().solve(Matrix::Identity(120, 120));
      if (condition_number(l_inv * dense * l_inv.transpose()) >= condition_number(dense)) continue;
      const auto r = pcg_solve(op, m, b, relative(1e-9));
      EXPECT_LE(static_cast<double>(r.iterations), 1.05 * static_cast<double>(none.iterations)) << "l = " << l;
    }
  }
}
