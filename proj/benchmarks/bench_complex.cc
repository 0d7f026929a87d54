#include <benchmark/benchmark.h>

#include "simgroup/complex.hpp"
#include "simgroup/homology.hpp"

using namespace simgroup;

namespace {

std::vector<Word> comb(std::size_t h) {
  std::vector<Word> blocks{Word{}};
  while (blocks.size() < h) {
    Word x = blocks.front();
    blocks.erase(blocks.begin());
    blocks.insert(blocks.begin(), {x.child(1), x.child(2)});
  }
  return blocks;
}

void BM_Nerve(benchmark::State& state) {
  auto s = make_vdh_structure(2, PermGroup::trivial(2));
  PseudoVertex v = positive_vertex(*s, make_partition(*s, comb(static_cast<std::size_t>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(nerve(*s, v));
}
BENCHMARK(BM_Nerve)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_NerveHomology(benchmark::State& state) {
  auto s = make_vdh_structure(2, PermGroup::trivial(2));
  PseudoVertex v = positive_vertex(*s, make_partition(*s, comb(static_cast<std::size_t>(state.range(0)))));
  NerveComplex n = nerve(*s, v);
  for (auto _ : state) benchmark::DoNotOptimize(connectivity_check(n.flag, 1));
}
BENCHMARK(BM_NerveHomology)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Sublevel(benchmark::State& state) {
  auto s = make_vdh_structure(2, PermGroup::trivial(2));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sublevel(*s, 3, 2));
}
BENCHMARK(BM_Sublevel)->Unit(benchmark::kMillisecond);

}  // namespace
