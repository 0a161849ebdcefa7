#include <algorithm>
#include <deque>
#include <unordered_map>

#include "geo/automata_io.hpp"
#include "geo/wdiff.hpp"

namespace geo {

namespace {

enum Phase : std::uint8_t { kBoth = 0, kLeftEnded = 1, kRightEnded = 2 };

// Left multiplication by x^-1 and right multiplication by y, PAD meaning
// "no letter".
class DiffStep {
 public:
  explicit DiffStep(const Group& g) : g_(g) {
    for (Letter x = 0; x < g.alphabet().size(); ++x) inv_.push_back(g.inv(g.eval({x})));
  }
  Element operator()(const Element& d, Letter x, Letter y) const {
    Element r = x == kPad ? d : g_.mult(inv_[x], d);
    return y == kPad ? r : g_.times_letter(r, y);
  }

 private:
  const Group& g_;
  std::vector<Element> inv_;
};

std::string element_label(const Group& g, const Element& e) {
  std::string s = g.to_string(e);
  return s.empty() ? "1" : s;
}

std::optional<Phase> next_phase(Phase p, Letter x, Letter y) {
  if (x == kPad && y == kPad) return std::nullopt;
  switch (p) {
    case kBoth: return x == kPad ? kLeftEnded : y == kPad ? kRightEnded : kBoth;
    case kLeftEnded: return x == kPad ? std::optional<Phase>(kLeftEnded) : std::nullopt;
    case kRightEnded: return y == kPad ? std::optional<Phase>(kRightEnded) : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

WordDifferenceMachine synthesize_D(GeodesicOracle& oracle, std::size_t bound) {
  const Group& group = oracle.group();
  const Alphabet& a = oracle.alphabet();
  const std::size_t n = a.size(), m = n + 1;  // letters plus PAD
  auto code = [n](Letter x) { return x == kPad ? n : std::size_t(x); };
  oracle.ensure_radius(bound + 1);
  DiffStep step(group);

  std::unordered_map<Element, std::uint32_t, ElementHash> ids;
  std::vector<Element> diffs;
  std::vector<std::int64_t> memo;  // diff * m * m + code(x) * m + code(y), -1 unknown
  auto intern = [&](Element e) {
    auto [it, inserted] = ids.try_emplace(e, static_cast<std::uint32_t>(diffs.size()));
    if (inserted) {
      diffs.push_back(std::move(e));
      memo.resize(diffs.size() * m * m, -1);
    }
    return it->second;
  };
  const std::uint32_t e = intern(group.identity());

  Word u, v;
  for (std::uint32_t i = 0; i < oracle.ball_size() && oracle.distance(i) <= bound; ++i) {
    u = oracle.word(i);
    u.push_back(0);
    for (Letter x = 0; x < n; ++x) {
      u.back() = x;
      v = oracle.word(oracle.neighbour(i, x));
      std::uint32_t d = e;
      for (std::size_t t = 0; t < std::max(u.size(), v.size()); ++t) {
        Letter p = t < u.size() ? u[t] : kPad, q = t < v.size() ? v[t] : kPad;
        std::int64_t& slot = memo[(std::size_t(d) * m + code(p)) * m + code(q)];
        if (slot < 0) {
          std::uint32_t r = intern(step(diffs[d], p, q));
          memo[(std::size_t(d) * m + code(p)) * m + code(q)] = r;  // memo may have moved
          d = r;
        } else {
          d = static_cast<std::uint32_t>(slot);
        }
      }
    }
  }

  // all transitions between collected differences, in three phases
  const std::size_t k = diffs.size();
  std::vector<std::vector<std::pair<std::pair<Letter, Letter>, std::uint32_t>>> moves(k);
  for (std::uint32_t d = 0; d < k; ++d)
    for (std::size_t cx = 0; cx < m; ++cx)
      for (std::size_t cy = 0; cy < m; ++cy) {
        if (cx == n && cy == n) continue;
        Letter x = cx == n ? kPad : Letter(cx), y = cy == n ? kPad : Letter(cy);
        auto it = ids.find(step(diffs[d], x, y));
        if (it != ids.end()) moves[d].push_back({{x, y}, it->second});
      }

  // states are d * 3 + phase; keep those reachable from (e, both) that can
  // reach an identity state
  const std::size_t total = k * 3;
  auto edges_of = [&](std::size_t s, auto&& visit) {
    const Phase p = static_cast<Phase>(s % 3);
    for (const auto& [xy, t] : moves[s / 3])
      if (auto np = next_phase(p, xy.first, xy.second)) visit(xy.first, xy.second, std::size_t(t) * 3 + *np);
  };
  std::vector<std::vector<std::size_t>> rev(total);
  for (std::size_t s = 0; s < total; ++s) edges_of(s, [&](Letter, Letter, std::size_t t) { rev[t].push_back(s); });
  std::vector<bool> live(total, false);
  std::deque<std::size_t> queue;
  for (int p = 0; p < 3; ++p) {
    live[std::size_t(e) * 3 + p] = true;
    queue.push_back(std::size_t(e) * 3 + p);
  }
  while (!queue.empty()) {
    std::size_t t = queue.front();
    queue.pop_front();
    for (std::size_t s : rev[t])
      if (!live[s]) {
        live[s] = true;
        queue.push_back(s);
      }
  }

  // breadth-first renumbering, edges in (left, right) order with PAD last
  std::vector<std::int64_t> number(total, -1);
  std::vector<std::size_t> order{std::size_t(e) * 3};
  number[order[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    edges_of(order[i], [&](Letter, Letter, std::size_t t) {
      if (live[t] && number[t] < 0) {
        number[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    });

  WordDifferenceMachine out;
  std::vector<bool> accepting;
  std::vector<std::vector<PairEdge>> edges;
  static const char* suffix[] = {"", " [left ended]", " [right ended]"};
  for (std::size_t s : order) {
    accepting.push_back(s / 3 == e);
    out.elements.push_back(diffs[s / 3]);
    out.labels.push_back(element_label(group, diffs[s / 3]) + suffix[s % 3]);
    std::vector<PairEdge> es;
    edges_of(s, [&](Letter x, Letter y, std::size_t t) {
      if (live[t]) es.push_back({x, y, static_cast<State>(number[t])});
    });
    std::sort(es.begin(), es.end());
    edges.push_back(std::move(es));
  }
  out.automaton = PairAutomaton(a, order.size(), 0, std::move(accepting), std::move(edges));
  return out;
}

DCheck check_D(GeodesicOracle& oracle, const PairAutomaton& d, std::size_t sample_length) {
  const Group& group = oracle.group();
  const Alphabet& a = oracle.alphabet();
  if (!(d.alphabet() == a)) throw InputError("word-difference machine and group use different alphabets");
  DCheck r;

  for (State q = 0; q < d.state_count(); ++q) {
    std::vector<std::pair<Letter, Letter>> labels;
    for (const auto& ed : d.edges(q)) labels.emplace_back(ed.left, ed.right);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) r.deterministic = false;
  }

  // D3: accepting start with (x, x) loops
  if (!d.accepting(d.start())) {
    r.d3 = false;
    r.d3_detail = "start state is not accepting";
  }
  for (Letter x = 0; x < a.size() && r.d3; ++x) {
    bool loop = false;
    for (const auto& ed : d.edges(d.start())) loop = loop || (ed.left == x && ed.right == x && ed.target == d.start());
    if (!loop) {
      r.d3 = false;
      r.d3_detail = "no (" + a.name(x) + "," + a.name(x) + ") loop at the start state";
    }
  }

  // D1: explore (state, phase, difference) breadth-first
  {
    DiffStep step(group);
    struct Node {
      State q;
      Phase p;
      Element g;
      std::int64_t parent;
      Letter x, y;
      std::size_t depth;
    };
    struct Key {
      State q;
      Phase p;
      Element g;
      bool operator==(const Key&) const = default;
    };
    struct KeyHash {
      std::size_t operator()(const Key& k) const noexcept { return ElementHash{}(k.g) * 31 + k.q * 3 + k.p; }
    };
    constexpr std::size_t kLimit = 2'000'000;
    std::vector<Node> nodes{{d.start(), kBoth, group.identity(), -1, 0, 0, 0}};
    std::unordered_map<Key, std::size_t, KeyHash> seen{{{d.start(), kBoth, group.identity()}, 0}};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (d.accepting(nodes[i].q) && !group.is_identity(nodes[i].g)) {
        Word u, v;
        for (std::int64_t j = std::int64_t(i); nodes[j].parent >= 0; j = nodes[j].parent) {
          if (nodes[j].x != kPad) u.push_back(nodes[j].x);
          if (nodes[j].y != kPad) v.push_back(nodes[j].y);
        }
        std::reverse(u.begin(), u.end());
        std::reverse(v.begin(), v.end());
        r.d1 = false;
        r.d1_witness = {u, v};
        break;
      }
      if (nodes[i].depth == sample_length) continue;
      for (const auto& ed : d.edges(nodes[i].q)) {
        auto np = next_phase(nodes[i].p, ed.left, ed.right);
        if (!np) continue;
        Element h = step(nodes[i].g, ed.left, ed.right);
        Key key{ed.target, *np, h};
        if (seen.count(key)) continue;
        if (nodes.size() >= kLimit) throw ResourceError("D1 check exceeded " + std::to_string(kLimit) + " configurations");
        seen.emplace(key, nodes.size());
        nodes.push_back({ed.target, *np, std::move(h), std::int64_t(i), ed.left, ed.right, nodes[i].depth + 1});
      }
    }
  }

  // D2 on normal-form pairs
  oracle.ensure_radius(sample_length + 1);
  Word u;
  for (std::uint32_t i = 0; i < oracle.ball_size() && oracle.distance(i) <= sample_length; ++i) {
    u = oracle.word(i);
    ++r.d2_pairs;
    if (d.accepts(u, u)) ++r.d2_accepted;
    else if (!r.d2_witness) r.d2_witness = {u, u};
    u.push_back(0);
    for (Letter x = 0; x < a.size(); ++x) {
      u.back() = x;
      Word v = oracle.word(oracle.neighbour(i, x));
      ++r.d2_pairs;
      if (d.accepts(u, v)) ++r.d2_accepted;
      else if (!r.d2_witness) r.d2_witness = {u, v};
    }
  }
  return r;
}

namespace {

// Nfa over the left tape: (state, order) where order tracks how the right
// word compares with the left one so far.
enum Order : std::uint8_t { kEqual = 0, kLess = 1, kGreater = 2, kShorter1 = 3, kShorter2 = 4 };
constexpr int kOrders = 5;

// Drops transitions into states that cannot reach acceptance; fewer distinct
// subsets survive determinization.
Nfa prune(Nfa nfa) {
  const std::size_t k = nfa.alphabet.size();
  std::vector<std::vector<State>> rev(nfa.state_count);
  for (State q = 0; q < nfa.state_count; ++q)
    for (std::size_t x = 0; x < k; ++x)
      for (State t : nfa.next[q * k + x]) rev[t].push_back(q);
  std::vector<bool> useful(nfa.accepting);
  std::vector<State> stack;
  for (State q = 0; q < nfa.state_count; ++q)
    if (useful[q]) stack.push_back(q);
  while (!stack.empty()) {
    State t = stack.back();
    stack.pop_back();
    for (State q : rev[t])
      if (!useful[q]) {
        useful[q] = true;
        stack.push_back(q);
      }
  }
  for (auto& ts : nfa.next) std::erase_if(ts, [&](State t) { return !useful[t]; });
  std::erase_if(nfa.starts, [&](State t) { return !useful[t]; });
  return nfa;
}

// With `factor`, accepts X* F X* where F holds the pairs (f, v) whose first
// letters differ and with |v| >= |f| - 2. A shortest non-normal factor f and
// its normal form v are such a pair: a common first letter would leave a
// shorter non-normal factor, and f minus its last letter is geodesic.
Nfa reducible_nfa(const PairAutomaton& d, bool factor) {
  const Alphabet& a = d.alphabet();
  Nfa nfa(a);
  const std::size_t base = factor ? 2 : 0;  // 0: X* prefix loop, 1: absorbing accept
  if (factor) {
    nfa.add_state(false);
    nfa.add_state(true);
    for (Letter x = 0; x < a.size(); ++x) {
      nfa.add_transition(0, x, 0);
      nfa.add_transition(1, x, 1);
    }
  }
  auto id = [&](State q, Order o) { return static_cast<State>(base + q * kOrders + o); };
  for (State q = 0; q < d.state_count(); ++q)
    for (int o = 0; o < kOrders; ++o) nfa.add_state(d.accepting(q) && o != kEqual && o != kGreater);
  for (State q = 0; q < d.state_count(); ++q)
    for (int o = 0; o < kOrders; ++o)
      for (const auto& ed : d.edges(q)) {
        if (ed.left == kPad) continue;  // right word longer: never less
        Order next;
        if (ed.right == kPad) {
          if (factor && o == kShorter2) continue;
          next = factor && o == kShorter1 ? kShorter2 : kShorter1;
        } else {
          if (o >= kShorter1) continue;
          next = o != kEqual ? Order(o) : ed.right < ed.left ? kLess : ed.right > ed.left ? kGreater : kEqual;
        }
        if (factor && next == kEqual) continue;
        const State from = id(q, Order(o)), to = id(ed.target, next);
        if (!factor) {
          nfa.add_transition(from, ed.left, to);
          continue;
        }
        if (o == kEqual) {
          if (q != d.start()) continue;
          nfa.add_transition(0, ed.left, to);
          if (nfa.accepting[to]) nfa.add_transition(0, ed.left, 1);
        } else {
          nfa.add_transition(from, ed.left, to);
          if (nfa.accepting[to]) nfa.add_transition(from, ed.left, 1);
        }
      }
  nfa.starts = {factor ? State(0) : id(d.start(), kEqual)};
  return prune(nfa);
}

}  // namespace

Dfa reducible_words(const PairAutomaton& d, std::size_t max_states) {
  return minimize(determinize(reducible_nfa(d, false), max_states));
}

Dfa shortlex_acceptor(const PairAutomaton& d, std::size_t max_states) {
  return minimize(complement(determinize(reducible_nfa(d, true), max_states)));
}

std::optional<Word> acceptor_mismatch(GeodesicOracle& oracle, const Dfa& w, std::size_t max_len) {
  oracle.ensure_radius(max_len);
  std::optional<Word> best;
  auto offer = [&](const Word& x) {
    if (!best || shortlex_less(x, *best)) best = x;
  };
  for_each_accepted(w, max_len, [&](const Word& x) {
    if (best && !shortlex_less(x, *best)) return;
    auto i = oracle.find(oracle.group().eval(x));
    if (!i || oracle.word(*i) != x) offer(x);
  });
  for (std::uint32_t i = 0; i < oracle.ball_size() && oracle.distance(i) <= max_len; ++i) {
    Word x = oracle.word(i);
    if (!w.accepts(x)) offer(x);
  }
  return best;
}

std::string to_json(const WordDifferenceMachine& d) { return to_json(d.automaton, &d.labels); }

WordDifferenceMachine wdiff_from_json(std::string_view text) {
  WordDifferenceMachine d;
  d.automaton = pair_from_json(text, &d.labels);
  return d;
}

}  // namespace geo
