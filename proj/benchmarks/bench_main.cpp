#include <benchmark/benchmark.h>

#include "stabsel/kernel.hpp"
#include "stabsel/krylov.hpp"
#include "stabsel/preconditioner.hpp"
#include "stabsel/stability.hpp"
#include "stabsel/synthetic.hpp"

using namespace stabsel;

namespace {

SparseMatrixCSR blocks(Index d) {
  RandomStream rng(1);
  return block_structured_spd(d, 25, rng);
}

void BM_Spmv(benchmark::State& state) {
  const auto a = blocks(state.range(0));
  RandomStream rng(2);
  const Vector x = gaussian_vector(a.dim(), rng);
  Vector y(a.dim());
  for (auto _ : state) {
    a.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(BM_Spmv)->Arg(500)->Arg(5000)->Arg(50000);

void BM_BlockApply(benchmark::State& state) {
  const auto a = blocks(5000);
  const auto m = block_pinch(a, state.range(0));
  RandomStream rng(3);
  const Vector v = gaussian_vector(a.dim(), rng);
  Vector out(a.dim());
  for (auto _ : state) {
    m.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_BlockApply)->Arg(1)->Arg(10)->Arg(25)->Arg(100);

void BM_StabilityEstimate(benchmark::State& state) {
  const auto a = blocks(2000);
  const auto m = block_pinch(a, 10);
  const SparseOperator op(a);
  RandomStream rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stab_estimate(op, m, state.range(0), rng).value);
  }
}
BENCHMARK(BM_StabilityEstimate)->Arg(10)->Arg(100);

void BM_Pcg(benchmark::State& state) {
  const auto a = blocks(2000);
  const auto m = block_pinch(a, 25);
  const SparseOperator op(a);
  RandomStream rng(5);
  const Vector b = gaussian_vector(a.dim(), rng);
  StoppingRule rule;
  rule.relative_tol = 1e-9;
  rule.max_iterations = 50000;
  for (auto _ : state) {
    const auto r = pcg_solve(op, m, b, rule);
    state.counters["iterations"] = static_cast<double>(r.iterations);
  }
}
BENCHMARK(BM_Pcg)->Unit(benchmark::kMillisecond);

void BM_WoodburyApply(benchmark::State& state) {
  RandomStream rng(6);
  const Dataset data = blob_dataset(state.range(0), 8, 10, rng);
  const auto system = make_kernel_system(data, 1.0, 1e-2);
  RandomStream crng(7);
  const auto clustering = kmeans_cluster(data.points, default_cluster_count(data.size()), crng);
  RandomStream lrng(8);
  const auto m = geometric_lowrank_precond(system, clustering, 25, lrng);
  const Vector v = gaussian_vector(data.size(), rng);
  Vector out(data.size());
  for (auto _ : state) {
    m.apply(v, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_WoodburyApply)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
