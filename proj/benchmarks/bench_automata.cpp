#include <random>

#include <benchmark/benchmark.h>

#include "geo/automata.hpp"
#include "geo/localtest.hpp"
#include "geo/semigroups.hpp"
#include "geo/tbinfer.hpp"

using namespace geo;

namespace {

Alphabet letters(int n) {
  std::vector<SymbolSpec> s;
  for (int i = 0; i < n; ++i) s.push_back({std::string(1, char('a' + i)), std::string(1, char('a' + i)), false});
  return Alphabet(s);
}

Dfa random_dfa(std::mt19937_64& rng, const Alphabet& a, std::size_t n) {
  std::uniform_int_distribution<State> target(0, static_cast<State>(n - 1));
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> acc(n);
  for (std::size_t q = 0; q < n; ++q) acc[q] = coin(rng);
  std::vector<State> table(n * a.size());
  for (auto& t : table) t = target(rng);
  return Dfa(a, n, 0, acc, table);
}

// (a+b)* a (a+b)^n: the classic exponential blow-up
Nfa nth_from_end(std::size_t n) {
  Nfa m(letters(2));
  for (std::size_t q = 0; q <= n + 1; ++q) m.add_state(q == n + 1);
  m.add_transition(0, 0, 0);
  m.add_transition(0, 1, 0);
  m.add_transition(0, 0, 1);
  for (State q = 1; q <= n; ++q) {
    m.add_transition(q, 0, q + 1);
    m.add_transition(q, 1, q + 1);
  }
  m.starts = {0};
  return m;
}

void BM_Determinize(benchmark::State& st) {
  const Nfa n = nth_from_end(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(determinize(n));
  st.SetLabel(std::to_string(std::size_t(1) << st.range(0)) + " subsets");
}
BENCHMARK(BM_Determinize)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Brzozowski(benchmark::State& st) {
  const Nfa n = nth_from_end(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(brzozowski(n));
}
BENCHMARK(BM_Brzozowski)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Minimize(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const Dfa d = random_dfa(rng, letters(3), static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(minimize(d));
}
BENCHMARK(BM_Minimize)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_TransitionSemigroup(benchmark::State& st) {
  std::mt19937_64 rng(2);
  const Dfa d = minimize(random_dfa(rng, letters(2), static_cast<std::size_t>(st.range(0))));
  std::size_t size = 0;
  for (auto _ : st) {
    try {
      TransitionSemigroup s(d, 200'000);
      size = s.size();
    } catch (const ResourceError&) {
      size = 0;
    }
  }
  st.SetLabel(std::to_string(size) + " elements");
}
BENCHMARK(BM_TransitionSemigroup)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_KTestableClassifier(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const Dfa d = minimize(random_dfa(rng, letters(3), 8));
  const auto k = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(is_k_testable(d, k));
}
BENCHMARK(BM_KTestableClassifier)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_KTestableSemigroup(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const Dfa d = minimize(random_dfa(rng, letters(3), 8));
  const auto k = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(is_k_testable_semigroup(d, k));
}
BENCHMARK(BM_KTestableSemigroup)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_TbMerge(benchmark::State& st) {
  std::mt19937_64 rng(4);
  const Dfa d = minimize(random_dfa(rng, letters(3), static_cast<std::size_t>(st.range(0))));
  const std::size_t k = 2 * d.state_count() - 1;
  for (auto _ : st) benchmark::DoNotOptimize(tb_merge(d, k));
}
BENCHMARK(BM_TbMerge)->Arg(50)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
