#include <algorithm>
#include <limits>
#include <unordered_map>

#include "geo/tbinfer.hpp"

namespace geo {

std::vector<std::size_t> depths(const Dfa& m) { return bfs_depths(m); }

BoundedEquivalence::BoundedEquivalence(const Dfa& m, std::size_t max_level) {
  const std::size_t n = m.state_count(), k = m.letter_count();
  std::vector<std::uint32_t> level(n);
  for (State q = 0; q < n; ++q) level[q] = m.accepting(q) ? 1 : 0;
  levels_.push_back(level);
  std::vector<std::uint32_t> sig;
  for (std::size_t j = 1; j <= max_level; ++j) {
    const auto& prev = levels_.back();
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    for (State q = 0; q < n; ++q) {
      sig.assign(1, prev[q]);
      for (std::size_t x = 0; x < k; ++x) sig.push_back(prev[m.next(q, static_cast<Letter>(x))]);
      std::string key(reinterpret_cast<const char*>(sig.data()), sig.size() * sizeof(std::uint32_t));
      next[q] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size())).first->second;
    }
    const bool stable = ids.size() == *std::max_element(prev.begin(), prev.end()) + 1;
    levels_.push_back(std::move(next));
    if (stable) break;  // later levels repeat this one
  }
}

bool BoundedEquivalence::same(State p, State q, std::size_t j) const {
  const auto& l = levels_[std::min(j, levels_.size() - 1)];
  return l[p] == l[q];
}

bool k_equivalent(const Dfa& m, State s, State t, std::size_t k) {
  const auto dep = depths(m);
  const std::size_t d = std::max(dep.at(s), dep.at(t));
  if (k <= d) throw PreconditionError("states " + std::to_string(s) + " and " + std::to_string(t) +
                                      " are not comparable at k = " + std::to_string(k));
  return BoundedEquivalence(m, k - d).same(s, t, k - d);
}

std::string_view to_string(TbAbort::Kind k) {
  switch (k) {
    case TbAbort::Kind::not_transitive: return "NotTransitive";
    case TbAbort::Kind::inconsistent_transitions: return "InconsistentTransitions";
    case TbAbort::Kind::incomparable_pair: return "IncomparablePair";
    case TbAbort::Kind::mixed_acceptance: return "MixedAcceptance";
  }
  return "";
}

std::string TbAbort::describe(const Alphabet& a) const {
  const std::string s1 = std::to_string(s), s2 = std::to_string(t);
  switch (kind) {
    case Kind::not_transitive:
      return "k-equivalence is not transitive: " + s1 + " ~ " + s2 + " ~ " + std::to_string(r) + " but " + s1 +
             " and " + std::to_string(r) + " differ";
    case Kind::inconsistent_transitions:
      return "k-equivalent states " + s1 + " and " + s2 + " disagree on letter '" + a.name(letter) + "'";
    case Kind::incomparable_pair:
      return "state " + s1 + " is too deep to compare with state " + s2;
    case Kind::mixed_acceptance:
      return "class of " + s1 + " mixes accepting and rejecting state " + s2;
  }
  return "";
}

TbResult tb_merge(const Dfa& input, std::size_t k) {
  const Dfa m = canonical(input);
  const std::size_t n = m.state_count(), letters = m.letter_count();
  const auto dep = depths(m);
  const BoundedEquivalence eqv(m, k);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  auto comparable = [&](State p, State q) { return std::max(dep[p], dep[q]) < k; };
  auto equivalent = [&](State p, State q) { return p == q || (comparable(p, q) && eqv.same(p, q, k - std::max(dep[p], dep[q]))); };

  TbResult res;
  auto fail = [&](TbAbort a) {
    res.abort = a;
    return res;
  };

  std::vector<State> reps{m.start()};
  std::vector<std::size_t> cls(n, kNone);  // class of explored states
  cls[m.start()] = 0;
  std::vector<std::vector<State>> members{{m.start()}};
  std::vector<State> table;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t x = 0; x < letters; ++x) {
      const State t = m.next(reps[i], static_cast<Letter>(x));
      std::size_t c = cls[t];
      if (c == kNone) {
        for (std::size_t j = 0; j < reps.size(); ++j) {
          if (!equivalent(reps[j], t)) continue;
          if (c != kNone) return fail({TbAbort::Kind::not_transitive, reps[c], t, reps[j]});
          c = j;
        }
        if (c == kNone) {
          if (dep[t] >= k) return fail({TbAbort::Kind::incomparable_pair, t, reps[i]});
          c = reps.size();
          reps.push_back(t);
          members.emplace_back();
        }
        cls[t] = c;
        members[c].push_back(t);
      }
      table.push_back(static_cast<State>(c));
    }

  // classes must be homogeneous, pairwise equivalent where comparable, and
  // closed under transitions
  for (std::size_t c = 0; c < reps.size(); ++c) {
    const State r = reps[c];
    for (State s : members[c]) {
      if (m.accepting(s) != m.accepting(r)) return fail({TbAbort::Kind::mixed_acceptance, r, s});
      for (State u : members[c])
        if (u < s && comparable(s, u) && !equivalent(s, u)) return fail({TbAbort::Kind::not_transitive, s, r, u});
      if (s == r) continue;
      for (std::size_t x = 0; x < letters; ++x) {
        const State a = m.next(s, static_cast<Letter>(x));
        const std::size_t target = table[c * letters + x];
        const bool ok = cls[a] != kNone ? cls[a] == target : !comparable(a, reps[target]) || equivalent(a, reps[target]);
        if (!ok) {
          TbAbort ab{TbAbort::Kind::inconsistent_transitions, r, s};
          ab.letter = static_cast<Letter>(x);
          return fail(ab);
        }
      }
    }
  }

  std::vector<bool> acc;
  for (State r : reps) acc.push_back(m.accepting(r));
  res.classes = reps.size();
  res.automaton = minimize(Dfa(m.alphabet(), reps.size(), 0, std::move(acc), std::move(table)));
  return res;
}

}  // namespace geo
