#include <benchmark/benchmark.h>

#include <random>

#include "simgroup/abelianization.hpp"
#include "simgroup/diagram.hpp"
#include "simgroup/germ.hpp"
#include "simgroup/table.hpp"

using namespace simgroup;

namespace {

void BM_Compose(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  GroupPtr H = share_group(PermGroup::symmetric(d));
  std::mt19937_64 rng(1);
  std::vector<TableElement> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(random_table(d, H, static_cast<std::size_t>(state.range(1)), rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(pool[i % 64], pool[(i + 1) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Compose)->Args({2, 8})->Args({2, 32})->Args({3, 15})->Args({3, 61});

void BM_Invert(benchmark::State& state) {
  GroupPtr H = share_group(PermGroup::symmetric(3));
  std::mt19937_64 rng(2);
  TableElement g = random_table(3, H, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(invert(g));
}
BENCHMARK(BM_Invert)->Arg(7)->Arg(31);

void BM_PhiHat(benchmark::State& state) {
  GroupPtr H = share_group(PermGroup::symmetric(3));
  AbelianizationResult ab = abelianization(3, *H);
  std::mt19937_64 rng(3);
  TableElement g = random_table(3, H, 31, rng);
  for (auto _ : state) benchmark::DoNotOptimize(phi_hat(g, ab));
}
BENCHMARK(BM_PhiHat);

void BM_Fingerprint(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  PermGroup H = PermGroup::symmetric(d);
  for (auto _ : state) benchmark::DoNotOptimize(germ_fingerprint(d, H, 3));
}
BENCHMARK(BM_Fingerprint)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DiagramReduce(benchmark::State& state) {
  auto s = make_vdh_structure(2, PermGroup::trivial(2));
  GroupPtr H = share_group(PermGroup::trivial(2));
  std::mt19937_64 rng(4);
  const auto cols = static_cast<std::size_t>(state.range(0));
  BraidedDiagram dg = concatenate(triple_to_diagram(*s, triple_from_table(random_table(2, H, cols, rng))),
                                  triple_to_diagram(*s, triple_from_table(random_table(2, H, cols, rng))));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(dg));
}
BENCHMARK(BM_DiagramReduce)->Arg(8)->Arg(32);

}  // namespace
