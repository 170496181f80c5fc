#include <benchmark/benchmark.h>

#include <memory>

#include "curvedpipe/solver.hpp"
#include "curvedpipe/stokes.hpp"
#include "curvedpipe/transport.hpp"

using namespace curvedpipe;

namespace {

std::shared_ptr<const Discretization> mesh_for(const benchmark::State& st) {
  const int nr = static_cast<int>(st.range(0));
  return std::make_shared<const Discretization>(nr, 3 * nr);
}

void BM_SecondaryAssembly(benchmark::State& st) {
  auto disc = mesh_for(st);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_secondary(*disc, 0.2));
}

void BM_StokesFactorization(benchmark::State& st) {
  auto disc = mesh_for(st);
  for (auto _ : st) {
    StokesOperator op(disc, 0.2);
    benchmark::DoNotOptimize(&op);
  }
}

void BM_TransportAssembly(benchmark::State& st) {
  auto disc = mesh_for(st);
  const StokesOperator op(disc, 0.2);
  const SolverState s = fixed_point(op, FlowParams(0.2, 2.0, 0.0, 4.0), nullptr).state;
  for (auto _ : st) {
    const EdgeFluxData edges = classify_edges(*disc, s.velocity, 0.1, 0.2);
    benchmark::DoNotOptimize(assemble_transport(*disc, discrete_advection(*disc, s.velocity, 0.1), 0.2, edges));
  }
}

void BM_FixedPointIteration(benchmark::State& st) {
  auto disc = mesh_for(st);
  const StokesOperator op(disc, 0.2);
  const FlowParams prm(0.2, 2.0, 0.1, 4.0);
  const SolverState start = fixed_point(op, FlowParams(0.2, 2.0, 0.0, 4.0), nullptr).state;
  for (auto _ : st) benchmark::DoNotOptimize(fixed_point(op, prm, &start, FixedPointOptions{1e-300, 1}));
}

}  // namespace

BENCHMARK(BM_SecondaryAssembly)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StokesFactorization)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransportAssembly)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FixedPointIteration)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
