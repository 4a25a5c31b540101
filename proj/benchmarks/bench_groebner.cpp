#include <benchmark/benchmark.h>

#include "mldforge/arcs.hpp"

using namespace mldforge;

namespace {

// Jets of the A_1 cone: dimension of the level-m jet scheme.
void BM_ConeJetDim(benchmark::State& state) {
  const unsigned m = static_cast<unsigned>(state.range(0));
  const std::vector<TPoly> eqs{TPoly::from_poly(parse_poly("x1*x2 - x3^2", 3, 1))};
  PrimeField F(default_primes(1, 1)[0], 1);
  for (auto _ : state) benchmark::DoNotOptimize(locus_dim(eqs, JetBase::OverK, 3, m, {}, F));
}
BENCHMARK(BM_ConeJetDim)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

// A contact cell: order >= 1 along the origin, Jacobian order exactly b.
void BM_ConeContactCell(benchmark::State& state) {
  const unsigned b = static_cast<unsigned>(state.range(0));
  const std::vector<TPoly> eqs{TPoly::from_poly(parse_poly("x1*x2 - x3^2", 3, 1))};
  std::vector<TPoly> m;
  for (const char* x : {"x1", "x2", "x3"}) m.push_back(TPoly::from_poly(parse_poly(x, 3, 1)));
  ContactQuery q{{{m, ContactMode::AtLeast, 1}, {jacobian_minors(eqs, 3), ContactMode::Exactly, b}}};
  PrimeField F(default_primes(1, 1)[0], 1);
  for (auto _ : state) benchmark::DoNotOptimize(locus_dim(eqs, JetBase::OverK, 3, 2 * b + 2, q, F));
}
BENCHMARK(BM_ConeContactCell)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
