#include <map>
#include <set>

#include "doctest.h"
#include "geo/semigroups.hpp"
#include "test_support.hpp"

using namespace geo;
using namespace geo::testing;
using Element = TransitionSemigroup::Element;

namespace {

Dfa even_a() {
  Alphabet one = plain_alphabet(1);
  return Dfa(one, 2, 0, {true, false}, {1, 0});
}

Dfa not_starting_with_b() {
  Alphabet ab = plain_alphabet(2);
  return Dfa(ab, 3, 0, {true, true, false}, {1, 2, 1, 1, 2, 2});
}

// Words over a, A, b, B whose support avoids {a, A} and {b, B}: states are
// the sets of letters seen so far.
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

// Exactly one a.
Dfa exactly_one_a() {
  Alphabet ab = plain_alphabet(2);
  return Dfa(ab, 3, 0, {false, true, false}, {1, 0, 2, 1, 2, 2});
}

using Map = std::vector<State>;

Map induced(const Dfa& d, const Word& w) {
  Map m(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) m[q] = d.run(q, w);
  return m;
}

Map compose(const Map& f, const Map& g) {
  Map r(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) r[q] = g[f[q]];
  return r;
}

// Brute-force local idempotence and commutativity on raw transformations.
bool brute_lic(const std::vector<Map>& elems) {
  for (const auto& e : elems) {
    if (compose(e, e) != e) continue;
    for (const auto& s : elems) {
      Map ese = compose(compose(e, s), e);
      if (compose(ese, ese) != ese) return false;
      for (const auto& t : elems) {
        Map ete = compose(compose(e, t), e);
        if (compose(ese, ete) != compose(ete, ese)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("(aa)* has two elements and is not aperiodic") {
  TransitionSemigroup s(even_a());
  CHECK(s.size() == 2);
  Element a = s.generator(0);
  CHECK(s.power(a, 3) == a);
  CHECK(s.power(a, 2) != a);
  auto idem = idempotents(s);
  REQUIRE(idem.size() == 1);
  CHECK(s.representative(idem[0]) == Word{0, 0});
  CHECK(is_idempotent(s).holds == Truth::no);
  CHECK(is_aperiodic(s).holds == Truth::no);
  CHECK(is_locally_idempotent_commutative(s).holds == Truth::no);
}

TEST_CASE("not starting with b: idempotent but not commutative") {
  TransitionSemigroup s(not_starting_with_b());
  const Word a{0}, b{1};
  CHECK(s.of_word({0, 1}) == s.of_word(a));
  CHECK(s.of_word({1, 0}) == s.of_word(b));
  CHECK(s.of_word({0, 1}) != s.of_word({1, 0}));
  CHECK(is_idempotent(s).holds == Truth::yes);
  auto c = is_commutative(s);
  CHECK(c.holds == Truth::no);
  CHECK(c.witness == std::vector<Word>{a, b});
}

TEST_CASE("support automaton of Z^2 is idempotent and commutative") {
  TransitionSemigroup s(z2_support());
  CHECK(is_idempotent(s).holds == Truth::yes);
  CHECK(is_commutative(s).holds == Truth::yes);
  CHECK(is_aperiodic(s).holds == Truth::yes);
  CHECK(is_locally_idempotent_commutative(s).holds == Truth::yes);
  CHECK(idempotents(s).size() == s.size());
}

TEST_CASE("freely reduced words: sink map is idempotent, semigroup locally idempotent commutative") {
  Alphabet a = free_alphabet(2);
  TransitionSemigroup s(freely_reduced_dfa(a));
  Element sink = s.of_word({0, 1});
  CHECK(s.is_idempotent(sink));
  const Dfa& m = s.base();
  State dead = m.run({0, 1});
  for (State q = 0; q < m.state_count(); ++q) CHECK(s.apply(sink, q) == dead);
  auto idem = idempotents(s);
  CHECK(std::find(idem.begin(), idem.end(), sink) != idem.end());
  CHECK(is_locally_idempotent_commutative(s).holds == Truth::yes);
}

TEST_CASE("exactly one a: aperiodic but not locally idempotent commutative") {
  TransitionSemigroup s(exactly_one_a());
  CHECK(is_aperiodic(s).holds == Truth::yes);
  auto v = is_locally_idempotent_commutative(s);
  CHECK(v.holds == Truth::no);
  REQUIRE(v.witness.size() == 3);
  Element e = s.of_word(v.witness[0]);
  CHECK(s.is_idempotent(e));
}

TEST_CASE("representatives are shortlex-least and evaluate correctly") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    TransitionSemigroup s(random_dfa(rng, a, 6));
    const std::size_t n = s.base().state_count();
    std::size_t bound = 1;
    for (std::size_t i = 0; i < n; ++i) bound *= n;
    CHECK(s.size() <= bound);
    std::map<Element, Word> first;
    for_each_word(a.size(), 6, [&](const Word& w) {
      if (w.empty()) return;
      Element e = s.of_word(w);
      first.emplace(e, w);
      const std::uint16_t* t = s.transformation(e);
      for (State q = 0; q < n; ++q) REQUIRE(t[q] == s.base().run(q, w));
    });
    for (auto [e, w] : first) CHECK(s.representative(e) == w);
    // Letters inducing the same map share the earliest letter as representative.
    for (Letter x = 0; x < a.size(); ++x) {
      Word r = s.representative(s.generator(x));
      REQUIRE(r.size() == 1);
      CHECK(r[0] <= x);
      if (r[0] < x) CHECK(s.generator(r[0]) == s.generator(x));
    }
    for (Element e = 0; e < s.size(); ++e) CHECK(s.of_word(s.representative(e)) == e);
  }
}

TEST_CASE("multiplication agrees with composition of transformations") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Alphabet a = plain_alphabet(2 + trial % 2);
    TransitionSemigroup s(random_dfa(rng, a, 7));
    const Dfa& m = s.base();
    for (Element x = 0; x < s.size(); ++x)
      for (Element y = 0; y < s.size(); y += 1 + s.size() / 40) {
        Map expect = compose(induced(m, s.representative(x)), induced(m, s.representative(y)));
        CHECK(induced(m, s.representative(s.multiply(x, y))) == expect);
      }
  }
}

TEST_CASE("predicates agree with brute force over raw transformations") {
  std::mt19937_64 rng(29);
  int lic_true = 0, lic_false = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Alphabet a = plain_alphabet(1 + trial % 3);
    TransitionSemigroup s(random_dfa(rng, a, 5));
    if (s.size() > 120) continue;
    const Dfa& m = s.base();
    std::vector<Map> elems;
    for (Element e = 0; e < s.size(); ++e) elems.push_back(induced(m, s.representative(e)));

    bool idem = true, comm = true, aper = true;
    for (const auto& x : elems) {
      idem = idem && compose(x, x) == x;
      Map p = x;
      bool stable = false;
      for (std::size_t i = 0; i <= elems.size() && !stable; ++i) {
        Map q = compose(p, x);
        stable = q == p;
        p = q;
      }
      aper = aper && stable;
      for (const auto& y : elems) comm = comm && compose(x, y) == compose(y, x);
    }
    bool lic = brute_lic(elems);
    (lic ? lic_true : lic_false)++;
    CHECK((is_idempotent(s).holds == Truth::yes) == idem);
    CHECK((is_commutative(s).holds == Truth::yes) == comm);
    CHECK((is_aperiodic(s).holds == Truth::yes) == aper);
    CHECK((is_locally_idempotent_commutative(s).holds == Truth::yes) == lic);
  }
  CHECK(lic_true > 0);
  CHECK(lic_false > 0);
}

TEST_CASE("syntactic congruence: equal elements have equal contexts") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(0, 6), ctx_len(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    Alphabet a = plain_alphabet(2);
    Dfa d = minimize(random_dfa(rng, a, 4));
    TransitionSemigroup s(d);
    std::uniform_int_distribution<int> letter(0, 1);
    auto random_word = [&](int n) {
      Word w(n);
      for (auto& x : w) x = static_cast<Letter>(letter(rng));
      return w;
    };
    for (int pair = 0; pair < 30; ++pair) {
      Word u = random_word(1 + len(rng) % 6), v = random_word(1 + len(rng) % 6);
      bool same = s.of_word(u) == s.of_word(v);
      if (same) {
        for (int c = 0; c < 200; ++c) {
          Word x = random_word(ctx_len(rng)), y = random_word(ctx_len(rng));
          CHECK(d.accepts(concat(concat(x, u), y)) == d.accepts(concat(concat(x, v), y)));
        }
      } else {
        // Minimal automaton: some context of length < |Q| separates them.
        bool separated = false;
        const std::size_t n = d.state_count();
        for_each_word(2, n, [&](const Word& x) {
          if (separated) return;
          for_each_word(2, n, [&](const Word& y) {
            if (d.accepts(concat(concat(x, u), y)) != d.accepts(concat(concat(x, v), y))) separated = true;
          });
        });
        CHECK(separated);
      }
    }
  }
}

TEST_CASE("element budget") {
  Alphabet a = free_alphabet(2);
  CHECK_THROWS_AS(TransitionSemigroup(freely_reduced_dfa(a), 3), ResourceError);
  TransitionSemigroup partial(even_a(), 1, true);
  CHECK(!partial.complete());
  auto v = is_aperiodic(partial);
  CHECK(v.holds == Truth::no);
  CHECK(is_idempotent(partial).holds == Truth::no);
  CHECK_THROWS_AS(idempotents(partial), PreconditionError);

  TransitionSemigroup partial2(z2_support(), 2, true);
  CHECK(is_aperiodic(partial2).holds == Truth::unknown);
  CHECK(is_locally_idempotent_commutative(partial2).holds == Truth::unknown);
}
