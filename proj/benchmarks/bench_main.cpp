#include <benchmark/benchmark.h>

#include "pervq/covers.hpp"
#include "pervq/documents.hpp"
#include "pervq/random.hpp"
#include "pervq/stokes.hpp"

namespace {

using namespace pervq;

void BM_Inverse(benchmark::State& state) {
  Sampler rng(11);
  const Matrix m = rng.invertible(static_cast<std::size_t>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(m));
}
BENCHMARK(BM_Inverse)->Arg(4)->Arg(8)->Arg(16);

void BM_StokesIdentity(benchmark::State& state) {
  Sampler rng(12);
  const Quiver q = random_quiver(rng, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem_identity(q));
}
BENCHMARK(BM_StokesIdentity)->Arg(2)->Arg(5);

void BM_Reconstruct(benchmark::State& state) {
  Sampler rng(13);
  const Quiver q = random_quiver(rng, 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_G(q));
}
BENCHMARK(BM_Reconstruct);

void BM_RoundTrip(benchmark::State& state) {
  Sampler rng(14);
  const Quiver q = random_quiver(rng, 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(parse_quiver_document(serialize_quiver(q)));
}
BENCHMARK(BM_RoundTrip);

void BM_AirySectors(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ramified_sector_multipliers(BuiltinCover::Airy));
}
BENCHMARK(BM_AirySectors)->Unit(benchmark::kMillisecond);

void BM_ElementarySectors(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ramified_sector_multipliers(BuiltinCover::Elementary));
}
BENCHMARK(BM_ElementarySectors)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
