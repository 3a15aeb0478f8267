// Serial reference against the OpenMP checker on the Jacobi-type identities.
#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "vakit/parallel.hpp"

using namespace vakit;

namespace {

const Identity& jacobi_of(const std::string& name, std::int64_t radius) {
  static std::map<std::pair<std::string, std::int64_t>, std::pair<Structure, std::vector<Identity>>> cache;
  auto key = std::make_pair(name, radius);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Structure s = make_example(name);
    CheckOptions opt;
    opt.box_radius = radius;
    it = cache.emplace(key, std::make_pair(s, std::vector<Identity>{})).first;
    it->second.second = algebra_identities(*it->second.first.algebra, opt);
  }
  for (const auto& id : it->second.second)
    if (id.id == "jacobi") return id;
  throw std::logic_error("no jacobi identity");
}

void BM_JacobiSerial(benchmark::State& state) {
  const Identity& id = jacobi_of("exterior3", state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_serial(id));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * id.size()));
}

void BM_JacobiParallel(benchmark::State& state) {
  const Identity& id = jacobi_of("exterior3", state.range(0));
  ScopedWorkers workers(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(id));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * id.size()));
}

void BM_PlantedDefectsSerial(benchmark::State& state) {
  auto defects = fixtures::planted_defects();
  ScopedWorkers workers(1);
  for (auto _ : state)
    for (const auto& d : defects) benchmark::DoNotOptimize(d.check());
}

void BM_PlantedDefectsParallel(benchmark::State& state) {
  auto defects = fixtures::planted_defects();
  ScopedWorkers workers(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& d : defects) benchmark::DoNotOptimize(d.check());
}

}  // namespace

BENCHMARK(BM_JacobiSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiParallel)->Args({2, 2})->Args({4, 2})->Args({4, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlantedDefectsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlantedDefectsParallel)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
