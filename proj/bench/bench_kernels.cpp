// Serial reference vs OpenMP kernels on a few mid-sized groups.
//   reflen_bench --benchmark_filter=G29

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "reflen/kernels.hpp"
#include "reflen/matgroup.hpp"

using namespace reflen;

namespace {

const GroupTable& group(const std::string& spec) {
  static std::map<std::string, GroupTable> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, enumerate_group(parse_group_spec(spec))).first;
  return it->second;
}

const char* const kGroups[] = {"G26", "G(6,2,4)", "G29", "G31"};

template <typename Kernel>
void run(benchmark::State& state, const Kernel& kernel) {
  const auto& t = group(kGroups[state.range(0)]);
  const Exec exec = state.range(1) ? Exec::Parallel : Exec::Serial;
  state.SetLabel(std::string(kGroups[state.range(0)]) + (state.range(1) ? " parallel" : " serial"));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(t, exec));
  state.counters["order"] = static_cast<double>(t.order());
  state.counters["threads"] = state.range(1) ? kernel_threads() : 1;
}

void args(benchmark::internal::Benchmark* b) {
  for (int g = 0; g < 4; ++g)
    for (int p = 0; p < 2; ++p) b->Args({g, p});
  b->Unit(benchmark::kMillisecond);
}

void BM_CacSweep(benchmark::State& s) { run(s, [](const GroupTable& t, Exec e) { return cac_sweep(t, e); }); }
void BM_ReflectionDistances(benchmark::State& s) {
  run(s, [](const GroupTable& t, Exec e) { return reflection_distances(t, e); });
}
void BM_FirstNonDescending(benchmark::State& s) {
  run(s, [](const GroupTable& t, Exec e) { return first_non_descending(t, e); });
}

}  // namespace

BENCHMARK(BM_CacSweep)->Apply(args);
BENCHMARK(BM_ReflectionDistances)->Apply(args);
BENCHMARK(BM_FirstNonDescending)->Apply(args);

BENCHMARK_MAIN();
