#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "geo/automata.hpp"

namespace geo {

namespace {

constexpr State kNone = std::numeric_limits<State>::max();

struct TripleKey {
  State q, a, b;
  friend bool operator==(const TripleKey&, const TripleKey&) = default;
};

struct TripleKeyHash {
  std::size_t operator()(const TripleKey& k) const noexcept {
    std::uint64_t h = k.q;
    h = h * 0x9E3779B97F4A7C15ull + k.a;
    h = h * 0x9E3779B97F4A7C15ull + k.b;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

PairAutomaton::PairAutomaton(Alphabet alphabet, std::size_t states, State start, std::vector<bool> accepting,
                             std::vector<std::vector<PairEdge>> edges)
    : alphabet_(std::move(alphabet)), start_(start), accepting_(std::move(accepting)), edges_(std::move(edges)) {
  if (states == 0) throw InputError("pair automaton needs at least one state");
  if (accepting_.size() != states || edges_.size() != states)
    throw InputError("pair automaton arrays do not match state count");
  if (start_ >= states) throw InputError("start state out of range");
  const auto n = alphabet_.size();
  for (const auto& out : edges_)
    for (const auto& e : out) {
      if (e.target >= states) throw InputError("pair transition target out of range");
      if (e.left == kPad && e.right == kPad) throw InputError("transition labeled (PAD, PAD)");
      if ((e.left != kPad && e.left >= n) || (e.right != kPad && e.right >= n))
        throw InputError("pair transition label outside the alphabet");
    }
}

std::size_t PairAutomaton::edge_count() const {
  std::size_t c = 0;
  for (const auto& out : edges_) c += out.size();
  return c;
}

bool PairAutomaton::accepts(const Word& u, const Word& v) const {
  const std::size_t len = std::max(u.size(), v.size());
  std::vector<char> cur(state_count(), 0), nxt;
  cur[start_] = 1;
  for (std::size_t i = 0; i < len; ++i) {
    Letter l = i < u.size() ? u[i] : kPad;
    Letter r = i < v.size() ? v[i] : kPad;
    nxt.assign(state_count(), 0);
    for (State q = 0; q < state_count(); ++q)
      if (cur[q])
        for (const auto& e : edges_[q])
          if (e.left == l && e.right == r) nxt[e.target] = 1;
    cur.swap(nxt);
  }
  for (State q = 0; q < state_count(); ++q)
    if (cur[q] && accepting_[q]) return true;
  return false;
}

PairAutomaton trim(const PairAutomaton& p) {
  const std::size_t n = p.state_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q)
    for (const auto& e : p.edges(q)) rev[e.target].push_back(q);
  std::vector<char> useful(n, 0);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (p.accepting(q)) {
      useful[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State r : rev[q])
      if (!useful[r]) {
        useful[r] = 1;
        stack.push_back(r);
      }
  }

  std::vector<State> renum(n, kNone);
  std::vector<State> order{p.start()};
  renum[p.start()] = 0;
  std::vector<std::vector<PairEdge>> sorted_out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    State q = order[i];
    std::vector<PairEdge> out;
    for (const auto& e : p.edges(q))
      if (useful[e.target]) out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto& e : out)
      if (renum[e.target] == kNone) {
        renum[e.target] = static_cast<State>(order.size());
        order.push_back(e.target);
      }
    sorted_out.push_back(std::move(out));
  }
  std::vector<bool> acc(order.size());
  std::vector<std::vector<PairEdge>> edges(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    acc[i] = p.accepting(order[i]);
    for (auto e : sorted_out[i]) {
      e.target = renum[e.target];
      edges[i].push_back(e);
    }
  }
  return PairAutomaton(p.alphabet(), order.size(), 0, std::move(acc), std::move(edges));
}

PairAutomaton pair_restrict(const PairAutomaton& p, PairMode mode) {
  const std::size_t n = p.state_count();
  if (mode == PairMode::any) return trim(p);
  if (mode == PairMode::equal_length) {
    std::vector<std::vector<PairEdge>> edges(n);
    for (State q = 0; q < n; ++q)
      for (const auto& e : p.edges(q))
        if (e.left != kPad && e.right != kPad) edges[q].push_back(e);
    return trim(PairAutomaton(p.alphabet(), n, p.start(), p.accepting_flags(), std::move(edges)));
  }
  // first_longer: states (q, padded) where padded records that the right tape has ended.
  std::vector<std::vector<PairEdge>> edges(2 * n);
  std::vector<bool> acc(2 * n, false);
  for (State q = 0; q < n; ++q) {
    acc[2 * q + 1] = p.accepting(q);
    for (const auto& e : p.edges(q)) {
      if (e.left == kPad) continue;
      if (e.right == kPad) {
        edges[2 * q].push_back({e.left, e.right, 2 * e.target + 1});
        edges[2 * q + 1].push_back({e.left, e.right, 2 * e.target + 1});
      } else {
        edges[2 * q].push_back({e.left, e.right, 2 * e.target});
      }
    }
  }
  return trim(PairAutomaton(p.alphabet(), 2 * n, 2 * p.start(), std::move(acc), std::move(edges)));
}

PairAutomaton pair_product(const PairAutomaton& p, TapeFilter left, TapeFilter right) {
  if (left.dfa) require_same_alphabet(p.alphabet(), left.dfa->alphabet(), "pair product");
  if (right.dfa) require_same_alphabet(p.alphabet(), right.dfa->alphabet(), "pair product");
  struct Triple {
    State q, a, b;
  };
  std::vector<Triple> states;
  std::unordered_map<TripleKey, State, TripleKeyHash> ids;
  auto intern = [&](State q, State a, State b) {
    auto [it, inserted] = ids.emplace(TripleKey{q, a, b}, static_cast<State>(states.size()));
    if (inserted) states.push_back({q, a, b});
    return it->second;
  };
  intern(p.start(), left.dfa ? left.dfa->start() : 0, right.dfa ? right.dfa->start() : 0);
  std::vector<std::vector<PairEdge>> edges;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [q, a, b] = states[i];
    std::vector<PairEdge> out;
    for (const auto& e : p.edges(q)) {
      State na = (left.dfa && e.left != kPad) ? left.dfa->next(a, e.left) : a;
      State nb = (right.dfa && e.right != kPad) ? right.dfa->next(b, e.right) : b;
      out.push_back({e.left, e.right, intern(e.target, na, nb)});
    }
    edges.push_back(std::move(out));
  }
  std::vector<bool> acc(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [q, a, b] = states[i];
    bool ok = p.accepting(q);
    if (left.dfa) ok = ok && left.dfa->accepting(a) == left.accept;
    if (right.dfa) ok = ok && right.dfa->accepting(b) == right.accept;
    acc[i] = ok;
  }
  return trim(PairAutomaton(p.alphabet(), states.size(), 0, std::move(acc), std::move(edges)));
}

Nfa pair_project(const PairAutomaton& p, Side side) {
  const std::size_t n = p.state_count();
  auto kept = [&](const PairEdge& e) { return side == Side::first ? e.left : e.right; };
  // Epsilon closure over edges that pad the kept tape.
  std::vector<std::vector<State>> closure(n);
  std::vector<State> seen(n, kNone);  // stamped with the closure's root
  std::vector<State> stack;
  for (State q = 0; q < n; ++q) {
    stack.assign(1, q);
    seen[q] = q;
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      closure[q].push_back(s);
      for (const auto& e : p.edges(s))
        if (kept(e) == kPad && seen[e.target] != q) {
          seen[e.target] = q;
          stack.push_back(e.target);
        }
    }
  }
  Nfa out(p.alphabet());
  for (State q = 0; q < n; ++q) {
    bool acc = false;
    for (State s : closure[q]) acc = acc || p.accepting(s);
    out.add_state(acc);
  }
  out.starts.push_back(p.start());
  for (State q = 0; q < n; ++q)
    for (State s : closure[q])
      for (const auto& e : p.edges(s))
        if (kept(e) != kPad) out.add_transition(q, kept(e), e.target);
  return out;
}

std::optional<std::pair<Word, Word>> shortest_accepted_pair(const PairAutomaton& p) {
  const std::size_t n = p.state_count();
  std::vector<State> parent(n, kNone);
  std::vector<PairEdge> via(n);
  std::vector<char> seen(n, 0);
  std::deque<State> queue{p.start()};
  seen[p.start()] = 1;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (p.accepting(q)) {
      Word u, v;
      for (State s = q; s != p.start(); s = parent[s]) {
        if (via[s].left != kPad) u.push_back(via[s].left);
        if (via[s].right != kPad) v.push_back(via[s].right);
      }
      std::reverse(u.begin(), u.end());
      std::reverse(v.begin(), v.end());
      return std::make_pair(u, v);
    }
    auto out = p.edges(q);
    std::sort(out.begin(), out.end());
    for (const auto& e : out)
      if (!seen[e.target]) {
        seen[e.target] = 1;
        parent[e.target] = q;
        via[e.target] = e;
        queue.push_back(e.target);
      }
  }
  return std::nullopt;
}

bool padding_well_formed(const PairAutomaton& input) {
  const PairAutomaton p = trim(input);
  const std::size_t n = p.state_count();
  std::vector<char> in_left(n, 0), in_right(n, 0);
  for (State q = 0; q < n; ++q)
    for (const auto& e : p.edges(q)) {
      if (e.left == kPad) in_left[e.target] = 1;
      if (e.right == kPad) in_right[e.target] = 1;
    }
  for (State q = 0; q < n; ++q)
    for (const auto& e : p.edges(q)) {
      if (in_left[q] && e.left != kPad) return false;
      if (in_right[q] && e.right != kPad) return false;
    }
  return true;
}

}  // namespace geo
