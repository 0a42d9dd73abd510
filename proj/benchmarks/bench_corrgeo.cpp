#include <benchmark/benchmark.h>

#include "corrgeo/classical.hpp"
#include "corrgeo/entanglement.hpp"

using namespace corrgeo;

namespace {

MultipartiteState two_qubit_state() {
  return random_state({2, 2}, 4, 17);
}

MultipartiteState four_qubit_state() {
  return random_state({2, 2, 2, 2}, 16, 18);
}

}  // namespace

static void BM_EigHermitian16(benchmark::State& state) {
  const MultipartiteState x = four_qubit_state();
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(x.rho));
}
BENCHMARK(BM_EigHermitian16);

static void BM_PartialTrace16(benchmark::State& state) {
  const MultipartiteState x = four_qubit_state();
  for (auto _ : state)
    benchmark::DoNotOptimize(partial_trace(x.rho, x.dims, {0, 2}));
}
BENCHMARK(BM_PartialTrace16);

static void BM_DephasingObjective(benchmark::State& state) {
  const MultipartiteState x = four_qubit_state();
  const ProductBasis b = random_product_basis(x.dims, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(dephasing_probabilities(x.rho, b.locals));
}
BENCHMARK(BM_DephasingObjective);

static void BM_RelativeEntropy(benchmark::State& state) {
  const MultipartiteState x = two_qubit_state();
  const MultipartiteState y = random_state({2, 2}, 4, 19);
  for (auto _ : state)
    benchmark::DoNotOptimize(relative_entropy(x.rho, y.rho));
}
BENCHMARK(BM_RelativeEntropy);

static void BM_ClosestClassicalTwoQubit(benchmark::State& state) {
  const MultipartiteState x = two_qubit_state();
  SearchOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(closest_classical_state(x, opts));
}
BENCHMARK(BM_ClosestClassicalTwoQubit)->Arg(8)->Arg(32);

static void BM_ReeNumericTwoQubit(benchmark::State& state) {
  const MultipartiteState x = bell_diagonal({0.7, 0.1, 0.1, 0.1});
  ReeOptions opts;
  opts.restarts = 2;
  opts.terms = 16;
  for (auto _ : state) benchmark::DoNotOptimize(ree_numeric(x, opts));
}
BENCHMARK(BM_ReeNumericTwoQubit);

BENCHMARK_MAIN();
