#include "stabsel/stability.hpp"

#include <cmath>
#include <string>

namespace stabsel {

namespace {

void check_accuracy(double epsilon, double delta, const char* where) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ArgumentError(std::string(where) + ": epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError(std::string(where) + ": delta must lie in (0, 1)");
  }
}

Index ceil_to_index(double bound) { return static_cast<Index>(std::ceil(bound)); }

}  // namespace

Sketch make_sketch(const LinearOperator& a, Matrix q) {
  require_same_dim(a.dim(), q.rows(), "make_sketch");
  if (q.cols() < 1) throw ArgumentError("make_sketch: sketch needs at least one column");
  Sketch s;
  s.aq.resize(q.rows(), q.cols());
  Vector col(q.rows());
  for (Index i = 0; i < q.cols(); ++i) {
    a.apply(q.col(i), col);
    s.aq.col(i) = col;
  }
  s.spmv_count = static_cast<std::size_t>(q.cols());
  s.q = std::move(q);
  return s;
}

Sketch draw_sketch(const LinearOperator& a, Index k, RandomStream& rng) {
  if (k < 1) throw ArgumentError("sketch size k must be >= 1");
  Sketch s = make_sketch(a, gaussian_matrix(a.dim(), k, 1.0 / static_cast<double>(k), rng));
  s.gaussian_draws = static_cast<std::size_t>(a.dim() * k);
  return s;
}

double sketch_stability(const Preconditioner& m, const Sketch& sketch) {
  require_same_dim(m.dim(), sketch.q.rows(), "sketch_stability");
  double sum = 0.0;
  Vector z(sketch.q.rows());
  for (Index i = 0; i < sketch.q.cols(); ++i) {
    m.apply(sketch.aq.col(i), z);
    sum += (sketch.q.col(i) - z).squaredNorm();
  }
  return std::sqrt(sum);
}

StabilityEstimate stab_estimate(const LinearOperator& a, const Preconditioner& m, const Matrix& q) {
  require_same_dim(a.dim(), m.dim(), "stab_estimate");
  require_same_dim(a.dim(), q.rows(), "stab_estimate");
  if (q.cols() < 1) throw ArgumentError("stab_estimate: k must be >= 1");
  double sum = 0.0;
  Vector aq(a.dim());
  Vector z(a.dim());
  for (Index i = 0; i < q.cols(); ++i) {
    a.apply(q.col(i), aq);
    m.apply(aq, z);
    sum += (q.col(i) - z).squaredNorm();
  }
  StabilityEstimate est;
  est.value = std::sqrt(sum);
  est.k = q.cols();
  est.spmv_count = static_cast<std::size_t>(q.cols());
  est.solve_count = static_cast<std::size_t>(q.cols());
  return est;
}

StabilityEstimate stab_estimate(const LinearOperator& a, const Preconditioner& m, Index k,
                                RandomStream& rng) {
  if (k < 1) throw ArgumentError("stab_estimate: k must be >= 1");
  require_same_dim(a.dim(), m.dim(), "stab_estimate");
  const std::uint64_t seed = rng.seed();
  StabilityEstimate est =
      stab_estimate(a, m, gaussian_matrix(a.dim(), k, 1.0 / static_cast<double>(k), rng));
  est.seed = seed;
  est.gaussian_draws = static_cast<std::size_t>(a.dim() * k);
  return est;
}

StabilityEstimate stab_estimate(const SparseMatrixCSR& a, const Preconditioner& m, Index k,
                                RandomStream& rng) {
  return stab_estimate(SparseOperator(a), m, k, rng);
}

double exact_stability(const LinearOperator& a, const Preconditioner& m) {
  require_same_dim(a.dim(), m.dim(), "exact_stability");
  const Index d = a.dim();
  double sum = 0.0;
  Vector e = Vector::Zero(d);
  Vector ae(d);
  Vector z(d);
  for (Index i = 0; i < d; ++i) {
    e[i] = 1.0;
    a.apply(e, ae);
    m.apply(ae, z);
    z = e - z;
    sum += z.squaredNorm();
    e[i] = 0.0;
  }
  return std::sqrt(sum);
}

double exact_stability(const SparseMatrixCSR& a, const Preconditioner& m) {
  return exact_stability(SparseOperator(a), m);
}

Index sample_size_stab(double epsilon, double delta) {
  check_accuracy(epsilon, delta, "sample_size_stab");
  return ceil_to_index(12.0 / (epsilon * epsilon * (3.0 - 2.0 * epsilon)) * std::log(2.0 / delta));
}

Index sample_size_select(double epsilon, double delta, Index n) {
  check_accuracy(epsilon, delta, "sample_size_select");
  if (n < 1) throw ArgumentError("sample_size_select: n must be >= 1");
  return ceil_to_index(12.0 / (epsilon * epsilon * (3.0 - 2.0 * epsilon)) *
                       std::log(2.0 * static_cast<double>(n) / delta));
}

}  // namespace stabsel
