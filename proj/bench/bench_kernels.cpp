// OpenMP kernels against their serial reference versions on the largest
// desk-scale basis (five sites, five atoms, dimension 2002) and one step up.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "bhed/hamiltonian.hpp"
#include "bhed/serial_kernels.hpp"

namespace {

bhed::ModelParams params(std::size_t sites) {
  return bhed::ModelParams::uniform(sites, 1.0, 20.0, 0.0, 1.0, 30.0);
}

std::vector<bhed::cplx> random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<bhed::cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

void BM_Assemble(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  bhed::BasisTable basis(m, m);
  const auto p = params(m);
  for (auto _ : state) benchmark::DoNotOptimize(bhed::build_hamiltonian(p, basis));
  state.counters["dim"] = double(basis.dimension());
}

void BM_AssembleSerial(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  bhed::BasisTable basis(m, m);
  const auto p = params(m);
  for (auto _ : state) benchmark::DoNotOptimize(bhed::serial::build_hamiltonian(p, basis));
  state.counters["dim"] = double(basis.dimension());
}

template <bool Parallel>
void matvec_bench(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  bhed::BasisTable basis(m, m);
  const auto h = bhed::build_hamiltonian(params(m), basis);
  const auto x = random_vector(h.dim());
  std::vector<bhed::cplx> y(h.dim());
  for (auto _ : state) {
    if constexpr (Parallel) bhed::apply(h, x, y);
    else bhed::serial::apply(h, x, y);
    benchmark::DoNotOptimize(y.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(h.nnz()));
}

void BM_Matvec(benchmark::State& state) { matvec_bench<true>(state); }
void BM_MatvecSerial(benchmark::State& state) { matvec_bench<false>(state); }

}  // namespace

BENCHMARK(BM_Assemble)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matvec)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MatvecSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
