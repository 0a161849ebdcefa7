#include <benchmark/benchmark.h>

#include "geo/fixtures.hpp"
#include "geo/geodesy.hpp"
#include "geo/tbinfer.hpp"
#include "geo/wdiff.hpp"

using namespace geo;

namespace {

const char* const kGroups[] = {"free2", "z2", "example1", "artin3", "artin4", "artin5", "example5"};

void BM_SynthesizeD(benchmark::State& st) {
  const char* name = kGroups[st.range(0)];
  GeodesicOracle o(fixture(name).spec);
  o.ensure_radius(kDefaultSynthesisBound + 1);
  std::size_t states = 0;
  for (auto _ : st) states = synthesize_D(o, kDefaultSynthesisBound).automaton.state_count();
  st.SetLabel(std::string(name) + ": " + std::to_string(states) + " states");
}
BENCHMARK(BM_SynthesizeD)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

void BM_ShortlexAcceptor(benchmark::State& st) {
  const char* name = kGroups[st.range(0)];
  GeodesicOracle o(fixture(name).spec);
  const auto d = synthesize_D(o, kDefaultSynthesisBound);
  std::size_t states = 0;
  for (auto _ : st) states = shortlex_acceptor(d.automaton).state_count();
  st.SetLabel(std::string(name) + ": " + std::to_string(states) + " states");
}
BENCHMARK(BM_ShortlexAcceptor)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);

// GW_1 .. GW_i for the Artin group with m = 4
void BM_GwIterateArtin4(benchmark::State& st) {
  GeodesicOracle o(fixture("artin4").spec);
  const auto d = synthesize_D(o, kDefaultSynthesisBound);
  const Dfa w = shortlex_acceptor(d.automaton);
  const auto steps = static_cast<std::size_t>(st.range(0));
  std::size_t states = 0;
  for (auto _ : st) {
    Dfa g = w;
    for (std::size_t i = 0; i < steps; ++i) g = gw_iterate(d.automaton, g);
    states = g.state_count();
  }
  st.SetLabel(std::to_string(states) + " states");
}
BENCHMARK(BM_GwIterateArtin4)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_VerifyAndCrossCheck(benchmark::State& st) {
  const Fixture f = fixture("artin4");
  GeodesicOracle o(f.spec);
  const GwReport r = pipeline(o, fixture_config(f));
  for (auto _ : st) {
    benchmark::DoNotOptimize(verify_gw(*r.gw, *r.w, r.machine->automaton));
    benchmark::DoNotOptimize(oracle_crosscheck(o, *r.gw, 12));
  }
}
BENCHMARK(BM_VerifyAndCrossCheck)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& st) {
  const Fixture f = fixture(kGroups[st.range(0)]);
  std::size_t live = 0;
  for (auto _ : st) live = pipeline(f.spec, fixture_config(f)).gw_live_states();
  st.SetLabel(f.name + ": " + std::to_string(live) + " states");
}
BENCHMARK(BM_Pipeline)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
