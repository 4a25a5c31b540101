#include <benchmark/benchmark.h>

#include "mldforge/cyclo.hpp"

using mldforge::CycloScalar;

namespace {

CycloScalar sample(unsigned m) {
  CycloScalar s(1);
  for (long k = 1; k < 4; ++k) s += CycloScalar::zeta(m, k) * CycloScalar(k + 2);
  return s;
}

void BM_CycloMultiply(benchmark::State& state) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  CycloScalar a = sample(m), b = sample(m).pow(2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycloMultiply)->Arg(3)->Arg(12)->Arg(60);

void BM_CycloInverse(benchmark::State& state) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  CycloScalar a = sample(m);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_CycloInverse)->Arg(3)->Arg(12)->Arg(60);

}  // namespace
