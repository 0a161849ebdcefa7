#include <benchmark/benchmark.h>

#include "geo/fixtures.hpp"
#include "geo/groups.hpp"

using namespace geo;

namespace {

void ball(benchmark::State& st, const char* name) {
  const GroupSpec spec = fixture(name).spec;
  const auto r = static_cast<std::size_t>(st.range(0));
  std::size_t size = 0;
  for (auto _ : st) {
    GeodesicOracle o(spec);
    o.ensure_radius(r);
    size = o.ball_size();
  }
  st.SetLabel(std::to_string(size) + " elements");
}

void BM_BallFree2(benchmark::State& st) { ball(st, "free2"); }
void BM_BallArtin5(benchmark::State& st) { ball(st, "artin5"); }
void BM_BallExample5(benchmark::State& st) { ball(st, "example5"); }
void BM_BallFreeProduct(benchmark::State& st) { ball(st, "z2_free_z"); }

BENCHMARK(BM_BallFree2)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallArtin5)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallExample5)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BallFreeProduct)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_GeodesicCounts(benchmark::State& st) {
  GeodesicOracle o(fixture("artin4").spec);
  o.ensure_radius(12);
  for (auto _ : st) benchmark::DoNotOptimize(o.geodesic_counts(12));
}
BENCHMARK(BM_GeodesicCounts)->Unit(benchmark::kMillisecond);

}  // namespace
