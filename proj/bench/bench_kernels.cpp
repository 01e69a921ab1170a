// Serial vs OpenMP kernels. Arguments are (rows, dim).

#include <benchmark/benchmark.h>

#include "featknn/kernels.hpp"
#include "featknn/knn.hpp"
#include "support/fixtures.hpp"

using namespace featknn;

namespace {

Matrix<float> random_matrix(std::size_t rows, std::size_t dim) {
  std::mt19937_64 rng(rows * 31 + dim);
  return fixtures::random_set(rng, rows, dim, 4).vectors();
}

template <Execution Exec>
void BM_ScanDistances(benchmark::State& state) {
  const auto db = random_matrix(state.range(0), state.range(1));
  const auto query = random_matrix(1, state.range(1));
  std::vector<double> out(db.rows());
  for (auto _ : state) {
    kernels::scan_distances(Exec, MetricKind::CityBlock, db, query.row(0), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * db.rows());
}

template <Execution Exec>
void BM_ColumnMinmax(benchmark::State& state) {
  const auto data = random_matrix(state.range(0), state.range(1));
  std::vector<double> lo(data.cols()), hi(data.cols());
  for (auto _ : state) {
    if constexpr (Exec == Execution::Serial)
      kernels::serial::column_minmax(data, lo, hi);
    else
      kernels::omp::column_minmax(data, lo, hi);
    benchmark::DoNotOptimize(lo.data());
  }
  state.SetItemsProcessed(state.iterations() * data.rows());
}

template <Execution Exec>
void BM_ClassifyBatch(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto db = fixtures::random_set(rng, state.range(0), state.range(1), 6);
  const auto queries = fixtures::random_set(rng, 64, state.range(1), 6);
  const auto model = fit(db, {false, 0.99});
  for (auto _ : state) {
    auto r = classify_batch(model, queries.vectors(), 5, MetricKind::CityBlock, Exec);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * queries.size());
}

}  // namespace

#define SHAPES ->Args({300, 1024})->Args({5000, 128})->Args({20000, 64})->Unit(benchmark::kMicrosecond)
BENCHMARK(BM_ScanDistances<Execution::Serial>) SHAPES;
BENCHMARK(BM_ScanDistances<Execution::Parallel>) SHAPES;
BENCHMARK(BM_ColumnMinmax<Execution::Serial>) SHAPES;
BENCHMARK(BM_ColumnMinmax<Execution::Parallel>) SHAPES;
BENCHMARK(BM_ClassifyBatch<Execution::Serial>)->Args({300, 1024})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyBatch<Execution::Parallel>)->Args({300, 1024})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
