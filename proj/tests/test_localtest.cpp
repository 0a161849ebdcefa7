#include <map>
#include <set>
#include <tuple>

#include "doctest.h"
#include "geo/localtest.hpp"
#include "test_support.hpp"

using namespace geo;
using namespace geo::testing;

namespace {

Dfa z2_support() {
  Alphabet a = free_alphabet(2);
  std::vector<bool> acc(16);
  std::vector<State> table(16 * 4);
  for (State s = 0; s < 16; ++s) {
    acc[s] = !((s & 1) && (s & 2)) && !((s & 4) && (s & 8));
    for (Letter x = 0; x < 4; ++x) table[s * 4 + x] = s | (1u << x);
  }
  return minimize(Dfa(a, 16, 0, acc, table));
}

// Words over {a, b} containing aa.
Dfa contains_aa() {
  return Dfa(plain_alphabet(2), 3, 0, {false, false, true}, {1, 0, 2, 0, 2, 2});
}

Dfa exactly_one_a() { return Dfa(plain_alphabet(2), 3, 0, {false, true, false}, {1, 0, 2, 1, 2, 2}); }

std::set<KProfile, bool (*)(const KProfile&, const KProfile&)> profile_set() {
  return std::set<KProfile, bool (*)(const KProfile&, const KProfile&)>([](const KProfile& a, const KProfile& b) {
    return std::tie(a.prefix, a.suffix, a.factors) < std::tie(b.prefix, b.suffix, b.factors);
  });
}

bool is_rotation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  Word aa = concat(a, a);
  return std::search(aa.begin(), aa.end(), b.begin(), b.end()) != aa.end();
}

// Every reachable (profile, state) pair with the full k-factor sets; the
// profile must determine the state.
Truth exhaustive_k_testable(const Dfa& d, std::size_t k, std::size_t budget = 200'000) {
  ProfileClassifier c(d.letter_count(), k, budget);
  std::map<std::size_t, State> owner{{c.start(), d.start()}};
  std::vector<std::pair<std::size_t, State>> queue{{c.start(), d.start()}};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Letter x = 0; x < d.letter_count(); ++x) {
      std::size_t p;
      try {
        p = c.next(queue[h].first, x);
      } catch (const ResourceError&) {
        return Truth::unknown;
      }
      const State q = d.next(queue[h].second, x);
      auto [it, fresh] = owner.emplace(p, q);
      if (fresh) queue.emplace_back(p, q);
      else if (it->second != q) return Truth::no;
    }
  return Truth::yes;
}

// Random automaton with a rejecting sink, so that factor pruning kicks in.
Dfa random_with_sink(std::mt19937_64& rng, const Alphabet& a, std::size_t n) {
  Dfa r = random_dfa(rng, a, n);
  const std::size_t m = r.state_count() + 1, k = a.size();
  std::vector<bool> acc(m, false);
  std::vector<State> table(m * k, static_cast<State>(m - 1));
  std::bernoulli_distribution to_sink(0.25);
  for (State q = 0; q + 1 < m; ++q) {
    acc[q] = r.accepting(q);
    for (Letter x = 0; x < k; ++x)
      if (!to_sink(rng)) table[q * k + x] = r.next(q, x);
  }
  return minimize(Dfa(a, m, 0, acc, table));
}

}  // namespace

TEST_CASE("profiles") {
  Alphabet ab = plain_alphabet(2);
  KProfile p = k_profile(ab.parse("abab"), 2);
  CHECK(p.prefix == ab.parse("a"));
  CHECK(p.suffix == ab.parse("b"));
  CHECK(p.factors == std::set<Word>{ab.parse("ab"), ab.parse("ba")});

  KProfile q = k_profile(ab.parse("a"), 2);
  CHECK(q.prefix == ab.parse("a"));
  CHECK(q.suffix == ab.parse("a"));
  CHECK(q.factors.empty());

  KProfile r = k_profile(ab.parse("a"), 3);
  CHECK(r.prefix == ab.parse("a"));
  CHECK(r.factors.empty());
  CHECK(!sim_k(ab.parse("ab"), ab.parse("abab"), 3));
  CHECK(sim_k(ab.parse("aab"), ab.parse("aaab"), 2));
  CHECK_THROWS_AS(k_profile({}, 0), PreconditionError);
}

TEST_CASE("support") {
  Alphabet ab = plain_alphabet(2);
  CHECK(support(ab.parse("abab")) == std::set<Letter>{0, 1});
  CHECK(support({}).empty());
}

TEST_CASE("free-product words are ~n-equivalent") {
  // letters: 0 = (1,b), 1 = (a,b), 2 = c, 3 = (a,b^-1)
  for (std::size_t n : {2, 3}) {
    auto run = [n](Letter x) { return Word(n, x); };
    Word u, v;
    for (Letter x : {0, 1, 2, 1, 3, 1}) u = concat(u, run(x));
    for (Letter x : {0, 1, 3, 1, 2, 1}) v = concat(v, run(x));
    CHECK(sim_k(u, v, n));
  }
}

TEST_CASE("classifier: small profile counts") {
  ProfileClassifier c11(1, 1);
  CHECK(c11.explore() == 2);
  ProfileClassifier c21(2, 1);
  CHECK(c21.explore() == 4);
}

TEST_CASE("classifier: reachable profiles match enumeration once it saturates") {
  using Pair = std::pair<std::size_t, std::size_t>;
  for (auto [letters, k] : {Pair{2, 2}, Pair{3, 2}, Pair{2, 3}, Pair{4, 1}}) {
    ProfileClassifier c(letters, k);
    const std::size_t reachable = c.explore();
    // Profiles of the words of each length, one representative word each.
    auto all = profile_set();
    std::map<std::tuple<Word, Word, std::set<Word>>, Word> layer{{{Word{}, Word{}, {}}, Word{}}};
    all.insert(k_profile({}, k));
    // the next layer is a function of this one, so a repeated layer means
    // nothing new can appear (layers may alternate with the length parity)
    std::set<std::set<std::tuple<Word, Word, std::set<Word>>>> seen_layers;
    bool saturated = false;
    for (int len = 1; len <= 64 && !saturated; ++len) {
      std::map<std::tuple<Word, Word, std::set<Word>>, Word> next;
      for (const auto& [key, rep] : layer)
        for (Letter x = 0; x < letters; ++x) {
          Word w = rep;
          w.push_back(x);
          KProfile p = k_profile(w, k);
          all.insert(p);
          next.emplace(std::make_tuple(p.prefix, p.suffix, p.factors), w);
        }
      std::set<std::tuple<Word, Word, std::set<Word>>> b;
      for (const auto& kv : next) b.insert(kv.first);
      saturated = !seen_layers.insert(std::move(b)).second;
      layer = std::move(next);
    }
    CAPTURE(letters);
    CAPTURE(k);
    CHECK(saturated);
    CHECK(all.size() == reachable);
  }
}

TEST_CASE("classifier state is the profile of the word read") {
  std::mt19937_64 rng(41);
  for (std::size_t k = 1; k <= 4; ++k) {
    ProfileClassifier c(3, k);
    std::uniform_int_distribution<int> letter(0, 2), len(0, 12);
    for (int i = 0; i < 300; ++i) {
      Word w(len(rng));
      for (auto& x : w) x = static_cast<Letter>(letter(rng));
      CHECK(c.profile(c.run(w)) == k_profile(w, k));
    }
  }
}

TEST_CASE("classifier budget") {
  ProfileClassifier c(3, 3, 20);
  CHECK_THROWS_AS(c.explore(), ResourceError);
  auto v = is_k_testable(freely_reduced_dfa(free_alphabet(2)), 3, 5);
  CHECK(v.holds == Truth::unknown);
}

TEST_CASE("freely reduced words are 2-testable, not 1-testable") {
  Alphabet a = free_alphabet(2);
  Dfa d = minimize(freely_reduced_dfa(a));
  CHECK(is_k_testable(d, 2).holds == Truth::yes);
  CHECK(is_k_testable_semigroup(d, 2).holds == Truth::yes);
  auto v = is_k_testable(d, 1);
  REQUIRE(v.holds == Truth::no);
  REQUIRE(v.witness.size() == 2);
  CHECK(sim_k(v.witness[0], v.witness[1], 1));
  CHECK(freely_reduced(a, v.witness[0]));
  CHECK(!freely_reduced(a, v.witness[1]));
  CHECK(is_k_testable_semigroup(d, 1).holds == Truth::no);

  const Word u = a.parse("abAB"), w = a.parse("abBA");
  CHECK(freely_reduced(a, u));
  CHECK(!freely_reduced(a, w));
  CHECK(support(u) == support(w));
  CHECK(sim_k(u, w, 1));
}

TEST_CASE("support language of Z^2 is 1-testable") {
  Dfa d = z2_support();
  CHECK(is_k_testable(d, 1).holds == Truth::yes);
  CHECK(is_k_testable_semigroup(d, 1).holds == Truth::yes);
  auto m = min_k(d, 3);
  REQUIRE(m.k);
  CHECK(*m.k == 1);
}

TEST_CASE("containing aa is 2-testable by both deciders") {
  Dfa d = contains_aa();
  CHECK(is_k_testable(d, 2).holds == Truth::yes);
  CHECK(is_k_testable_semigroup(d, 2).holds == Truth::yes);
  CHECK(is_k_testable(d, 1).holds == Truth::no);
  CHECK(is_k_testable_semigroup(d, 1).holds == Truth::no);
}

TEST_CASE("k = 1 semigroup criterion is idempotent and commutative") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    TransitionSemigroup s(random_dfa(rng, a, 6));
    bool expect = is_idempotent(s).holds == Truth::yes && is_commutative(s).holds == Truth::yes;
    CHECK((is_k_testable_semigroup(s, 1).holds == Truth::yes) == expect);
  }
}

TEST_CASE("the two deciders agree on random minimal automata") {
  std::mt19937_64 rng(47);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    Dfa d = minimize(random_dfa(rng, a, 6));
    for (std::size_t k = 1; k <= 3; ++k) {
      auto c = is_k_testable(d, k);
      auto s = is_k_testable_semigroup(d, k);
      REQUIRE(c.holds != Truth::unknown);
      REQUIRE(s.holds != Truth::unknown);
      CAPTURE(trial);
      CAPTURE(k);
      CHECK(c.holds == s.holds);
      (c.holds == Truth::yes ? yes : no)++;
    }
  }
  CHECK(yes > 20);
  CHECK(no > 20);
}

TEST_CASE("refining walk agrees with the exhaustive classifier") {
  std::mt19937_64 rng(53);
  int yes = 0, no = 0, skipped = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    Dfa d = trial % 2 ? random_with_sink(rng, a, 6) : minimize(random_dfa(rng, a, 6));
    for (std::size_t k = 1; k <= 3; ++k) {
      CAPTURE(trial);
      CAPTURE(k);
      const Truth want = exhaustive_k_testable(d, k);
      LtVerdict got = is_k_testable(d, k);
      if (want == Truth::unknown) {
        ++skipped;
        CHECK(got.holds == is_k_testable_semigroup(d, k).holds);
        continue;
      }
      CHECK(got.holds == want);
      if (got.holds == Truth::no) {
        REQUIRE(got.witness.size() == 2);
        CHECK(sim_k(got.witness[0], got.witness[1], k));
        CHECK(d.accepts(got.witness[0]));
        CHECK(!d.accepts(got.witness[1]));
      }
      (want == Truth::yes ? yes : no)++;
    }
  }
  CHECK(yes > 20);
  CHECK(no > 20);
  CHECK(skipped < 100);
  CHECK(exhaustive_k_testable(contains_aa(), 2) == Truth::yes);
  CHECK(is_k_testable(contains_aa(), 2).holds == Truth::yes);
  CHECK(exhaustive_k_testable(z2_support(), 1) == Truth::yes);
  CHECK(is_k_testable(z2_support(), 1).holds == Truth::yes);
}

TEST_CASE("k-testability is monotone in k and implies local testability") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 80; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    Dfa d = minimize(random_dfa(rng, a, 6));
    bool lt = is_locally_testable(d).holds == Truth::yes;
    for (std::size_t k = 1; k <= 3; ++k) {
      bool now = is_k_testable(d, k).holds == Truth::yes;
      if (now) {
        CHECK(is_k_testable(d, k + 1).holds == Truth::yes);
        CHECK(is_k_testable_semigroup(d, k + 1).holds == Truth::yes);
        CHECK(lt);
      }
    }
  }
}

TEST_CASE("semigroup witnesses are genuine") {
  Alphabet a = free_alphabet(2);
  Dfa d = minimize(freely_reduced_dfa(a));
  TransitionSemigroup s(d);
  auto v = is_k_testable_semigroup(s, 1);
  REQUIRE(v.holds == Truth::no);
  if (v.witness.size() == 3) {
    const Word &x = v.witness[0], &y = v.witness[1], &z = v.witness[2];
    Word l = concat(concat(concat(concat(x, y), x), z), x), r = concat(concat(concat(concat(x, z), x), y), x);
    CHECK(s.of_word(l) != s.of_word(r));
  } else {
    REQUIRE(v.witness.size() == 2);
    Word xy = concat(v.witness[0], v.witness[1]);
    CHECK(s.of_word(xy) != s.of_word(concat(xy, v.witness[1])));
  }
}

TEST_CASE("min_k") {
  Alphabet a = free_alphabet(2);
  Dfa d = minimize(freely_reduced_dfa(a));
  auto m = min_k(d, 4, LtMethod::both);
  REQUIRE(m.k);
  CHECK(*m.k == 2);
  CHECK(m.exact);
  auto none = min_k(exactly_one_a(), 3, LtMethod::both);
  CHECK(!none.k);
  CHECK(none.per_k.size() == 3);
}

TEST_CASE("local testability") {
  CHECK(is_locally_testable(z2_support()).holds == Truth::yes);
  CHECK(is_locally_testable(exactly_one_a()).holds == Truth::no);
  CHECK(is_locally_testable(contains_aa()).holds == Truth::yes);
}

TEST_CASE("repetition witness: examples") {
  CHECK(repetition_bound(1, 1) == 4);
  CHECK(repetition_bound(2, 1) == 10);
  CHECK(repetition_bound(2, 2) == 68);
  auto r = repetition_witness(Word(4, 0), 1, 1);
  CHECK(r.rotated == Word(4, 0));
  CHECK(sim_k(r.rotated, power(r.rotated, 2), 1));

  Word ab5 = power({0, 1}, 5);
  auto s = repetition_witness(ab5, 1, 2);
  CHECK(is_rotation(ab5, s.rotated));
  for (std::size_t j = 1; j <= 4; ++j) CHECK(sim_k(s.rotated, power(s.rotated, j), 1));

  CHECK_THROWS_AS(repetition_witness(Word(3, 0), 1, 1), PreconditionError);
}

TEST_CASE("repetition witness: random words") {
  std::mt19937_64 rng(59);
  for (std::size_t letters : {1, 2})
    for (std::size_t k : {1, 2}) {
      const std::size_t n = repetition_bound(letters, k);
      std::uniform_int_distribution<int> letter(0, static_cast<int>(letters) - 1);
      for (int i = 0; i < 100; ++i) {
        Word w(n);
        for (auto& x : w) x = static_cast<Letter>(letter(rng));
        for (std::size_t j = 2; j <= 5; ++j) CHECK(sim_k(power(w, 2), power(w, j), k));
        auto r = repetition_witness(w, k, letters);
        CHECK(is_rotation(w, r.rotated));
        CHECK(concat(Word(w.begin() + r.shift, w.end()), Word(w.begin(), w.begin() + r.shift)) == r.rotated);
        for (std::size_t j = 1; j <= 4; ++j) CHECK(sim_k(r.rotated, power(r.rotated, j), k));
      }
    }
}
