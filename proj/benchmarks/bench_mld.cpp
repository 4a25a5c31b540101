#include <benchmark/benchmark.h>

#include "mldforge/mld.hpp"

using namespace mldforge;

namespace {

void BM_ToricLattice(benchmark::State& state) {
  const unsigned r = static_cast<unsigned>(state.range(0));
  FiniteGroup g = cyclic_group(r, {1, 2, static_cast<long>(r) - 3});
  for (auto _ : state) benchmark::DoNotOptimize(mld_toric_lattice(g, {}));
}
BENCHMARK(BM_ToricLattice)->Arg(7)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_PairIp(benchmark::State& state) {
  const unsigned r = static_cast<unsigned>(state.range(0));
  FiniteGroup g = cyclic_group(r, {1, 1});
  RIdealSpec ideal;
  IdealFactor f;
  f.exponent = Rational(1, 2);
  f.gens = {parse_poly("x1^" + std::to_string(r), 2, 1)};
  ideal.factors.push_back(f);
  for (auto _ : state) benchmark::DoNotOptimize(mld_quotient_pair_ip(g, ideal));
}
BENCHMARK(BM_PairIp)->Arg(3)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HyperquotientA1(benchmark::State& state) {
  Presentation p{cyclic_group(1, {0, 0, 0}), {parse_poly("x1*x2 - x3^2", 3, 1)}, {}, {}, {}};
  MldOptions o;
  o.b1_max = 2;
  o.b2_max = 2;
  for (auto _ : state) benchmark::DoNotOptimize(mld_hyperquotient(p, o));
}
BENCHMARK(BM_HyperquotientA1)->Unit(benchmark::kMillisecond);

}  // namespace
