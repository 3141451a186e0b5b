#include <benchmark/benchmark.h>

#include "fusion/ktheory.hpp"
#include "fusion/torsion.hpp"

using namespace fusion;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_AssembleDelta(benchmark::State& state) {
  OrbitSpace space(make_free_product({make_unitary(2), make_orthogonal(3)}));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_delta(space, 5, mode(state)));
}

void BM_RingAxioms(benchmark::State& state) {
  auto ring = make_free_product({make_cyclic(2), make_su2()});
  VerifyOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_based_ring_axioms(*ring, 5, opts));
}

void BM_ModuleAxioms(benchmark::State& state) {
  auto m = spin_module();
  VerifyOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(check_module_axioms(*m, 6, opts));
}

void BM_Enumerate(benchmark::State& state) {
  EnumerationOptions opts;
  opts.max_rank = 4;
  opts.execution = mode(state);
  auto ring = make_cyclic(4);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_modules(ring, opts));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_AssembleDelta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RingAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModuleAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
