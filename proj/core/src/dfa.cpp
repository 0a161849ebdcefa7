#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "geo/automata.hpp"

namespace geo {

namespace {

constexpr State kNone = std::numeric_limits<State>::max();

struct StateSetHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (State s : v) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

Dfa::Dfa(Alphabet alphabet, std::size_t states, State start, std::vector<bool> accepting,
         std::vector<State> table)
    : alphabet_(std::move(alphabet)), start_(start), accepting_(std::move(accepting)), table_(std::move(table)) {
  if (states == 0) throw InputError("automaton needs at least one state");
  if (accepting_.size() != states) throw InputError("accepting flags do not match state count");
  if (table_.size() != states * alphabet_.size()) throw InputError("transition table is not total");
  if (start_ >= states) throw InputError("start state out of range");
  for (State t : table_)
    if (t >= states) throw InputError("transition target out of range");
}

Dfa Dfa::all_words(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, {true}, std::vector<State>(alphabet.size(), 0));
}

Dfa Dfa::empty_language(const Alphabet& alphabet) {
  return Dfa(alphabet, 1, 0, {false}, std::vector<State>(alphabet.size(), 0));
}

State Dfa::run(State q, const Word& w) const {
  for (Letter x : w) q = next(q, x);
  return q;
}

State Nfa::add_state(bool accept) {
  accepting.push_back(accept);
  next.resize(next.size() + alphabet.size());
  return static_cast<State>(state_count++);
}

void Nfa::add_transition(State from, Letter x, State to) {
  auto& v = next[from * alphabet.size() + x];
  if (std::find(v.begin(), v.end(), to) == v.end()) v.push_back(to);
}

bool Nfa::accepts(const Word& w) const {
  std::vector<char> cur(state_count, 0);
  for (State s : starts) cur[s] = 1;
  for (Letter x : w) {
    std::vector<char> nxt(state_count, 0);
    for (State q = 0; q < state_count; ++q)
      if (cur[q])
        for (State t : targets(q, x)) nxt[t] = 1;
    cur.swap(nxt);
  }
  for (State q = 0; q < state_count; ++q)
    if (cur[q] && accepting[q]) return true;
  return false;
}

Dfa canonical(const Dfa& d) {
  const std::size_t k = d.letter_count();
  std::vector<State> order;
  std::vector<State> renum(d.state_count(), kNone);
  renum[d.start()] = 0;
  order.push_back(d.start());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t x = 0; x < k; ++x) {
      State t = d.next(order[i], static_cast<Letter>(x));
      if (renum[t] == kNone) {
        renum[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<bool> acc(order.size());
  std::vector<State> table(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    acc[i] = d.accepting(order[i]);
    for (std::size_t x = 0; x < k; ++x) table[i * k + x] = renum[d.next(order[i], static_cast<Letter>(x))];
  }
  return Dfa(d.alphabet(), order.size(), 0, std::move(acc), std::move(table));
}

namespace {

// Subsets as bitsets in one pool; used when the per-(state, letter) target
// bitsets fit in memory.
Dfa determinize_bits(const Nfa& n, std::size_t max_states) {
  const std::size_t k = n.alphabet.size();
  const std::size_t w = (n.state_count + 63) / 64;
  std::vector<std::uint64_t> step(n.state_count * k * w, 0);
  for (State q = 0; q < n.state_count; ++q)
    for (std::size_t x = 0; x < k; ++x)
      for (State t : n.targets(q, static_cast<Letter>(x))) step[(q * k + x) * w + t / 64] |= 1ull << (t % 64);
  std::vector<std::uint64_t> acc_bits(w, 0);
  for (State q = 0; q < n.state_count; ++q)
    if (n.accepting[q]) acc_bits[q / 64] |= 1ull << (q % 64);

  std::vector<std::uint64_t> pool;
  auto slice = [&](State id) { return pool.data() + std::size_t(id) * w; };
  struct Hash {
    const std::vector<std::uint64_t>* pool;
    std::size_t w;
    std::size_t operator()(State id) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (std::size_t i = 0; i < w; ++i) h = (h ^ (*pool)[id * w + i]) * 1099511628211ull;
      return h;
    }
  };
  struct Eq {
    const std::vector<std::uint64_t>* pool;
    std::size_t w;
    bool operator()(State a, State b) const noexcept {
      return std::equal(pool->begin() + a * w, pool->begin() + (a + 1) * w, pool->begin() + b * w);
    }
  };
  std::unordered_set<State, Hash, Eq> ids(1024, Hash{&pool, w}, Eq{&pool, w});
  std::vector<State> table;
  std::vector<bool> acc;
  std::size_t count = 0;

  // the candidate sits at the end of the pool; keep it or drop it
  auto intern = [&]() -> State {
    const State id = static_cast<State>(count);
    auto it = ids.find(id);
    if (it != ids.end()) {
      pool.resize(pool.size() - w);
      return *it;
    }
    if (count >= max_states)
      throw ResourceError("subset construction exceeded " + std::to_string(max_states) + " states");
    ids.insert(id);
    ++count;
    bool a = false;
    for (std::size_t i = 0; i < w; ++i) a = a || (slice(id)[i] & acc_bits[i]);
    acc.push_back(a);
    return id;
  };

  pool.resize(w, 0);
  for (State s : n.starts) pool[s / 64] |= 1ull << (s % 64);
  intern();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t x = 0; x < k; ++x) {
      pool.resize(pool.size() + w, 0);  // may reallocate: index, don't hold pointers
      const std::size_t dst = pool.size() - w;
      for (std::size_t b = 0; b < w; ++b) {
        std::uint64_t bits = pool[i * w + b];
        while (bits) {
          const State q = static_cast<State>(b * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          const std::uint64_t* src = &step[(q * k + x) * w];
          for (std::size_t j = 0; j < w; ++j) pool[dst + j] |= src[j];
        }
      }
      table.push_back(intern());
    }
  }
  return canonical(Dfa(n.alphabet, count, 0, std::move(acc), std::move(table)));
}

}  // namespace

Dfa determinize(const Nfa& n, std::size_t max_states) {
  const std::size_t k = n.alphabet.size();
  if (n.state_count > 0 && n.state_count * k * ((n.state_count + 63) / 64) <= (std::size_t(1) << 24))
    return determinize_bits(n, max_states);
  std::unordered_map<std::vector<State>, State, StateSetHash> ids;
  std::vector<const std::vector<State>*> sets;  // keys of ids, which stay put
  std::vector<State> table;
  std::vector<bool> acc;
  std::size_t stored = 0;
  constexpr std::size_t kMaxStored = std::size_t(3) << 27;  // subset entries, 1.5 GiB

  auto intern = [&](std::vector<State>& s) -> State {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, inserted] = ids.try_emplace(std::move(s), static_cast<State>(sets.size()));
    if (inserted) {
      stored += it->first.size();
      if (sets.size() >= max_states)
        throw ResourceError("subset construction exceeded " + std::to_string(max_states) + " states");
      if (stored > kMaxStored)
        throw ResourceError("subset construction exceeded " + std::to_string(kMaxStored) + " stored subset entries");
      bool a = false;
      for (State q : it->first) a = a || n.accepting[q];
      acc.push_back(a);
      sets.push_back(&it->first);
    }
    return it->second;
  };

  std::vector<State> buf = n.starts;
  intern(buf);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t x = 0; x < k; ++x) {
      buf.clear();
      for (State q : *sets[i]) {
        const auto& ts = n.targets(q, static_cast<Letter>(x));
        buf.insert(buf.end(), ts.begin(), ts.end());
      }
      State t = intern(buf);
      table.push_back(t);
    }
  }
  return canonical(Dfa(n.alphabet, sets.size(), 0, std::move(acc), std::move(table)));
}

Nfa to_nfa(const Dfa& d) {
  Nfa n(d.alphabet());
  for (State q = 0; q < d.state_count(); ++q) n.add_state(d.accepting(q));
  for (State q = 0; q < d.state_count(); ++q)
    for (Letter x = 0; x < d.letter_count(); ++x) n.add_transition(q, x, d.next(q, x));
  n.starts = {d.start()};
  return n;
}

Nfa reverse(const Nfa& n) {
  Nfa r(n.alphabet);
  std::vector<bool> start(n.state_count, false);
  for (State s : n.starts) start[s] = true;
  for (State q = 0; q < n.state_count; ++q) r.add_state(start[q]);
  for (State q = 0; q < n.state_count; ++q)
    for (Letter x = 0; x < n.alphabet.size(); ++x)
      for (State t : n.targets(q, x)) r.add_transition(t, x, q);
  for (State q = 0; q < n.state_count; ++q)
    if (n.accepting[q]) r.starts.push_back(q);
  return r;
}

Dfa brzozowski(const Nfa& n, std::size_t max_states) {
  const Dfa back = minimize(determinize(reverse(n), max_states));
  return minimize(determinize(reverse(to_nfa(back)), max_states));
}

Dfa minimize(const Dfa& input) {
  const Dfa d = canonical(input);
  const std::size_t n = d.state_count();
  const std::size_t k = d.letter_count();

  // Predecessor lists per letter, CSR layout.
  std::vector<std::size_t> pred_start(k * (n + 1), 0);
  std::vector<State> preds(n * k);
  for (std::size_t x = 0; x < k; ++x) {
    std::size_t* base = &pred_start[x * (n + 1)];
    for (State q = 0; q < n; ++q) ++base[d.next(q, static_cast<Letter>(x)) + 1];
    for (std::size_t i = 0; i < n; ++i) base[i + 1] += base[i];
    std::vector<std::size_t> fill(base, base + n);
    for (State q = 0; q < n; ++q) {
      State t = d.next(q, static_cast<Letter>(x));
      preds[x * n + fill[t]++] = q;
    }
  }

  // Partition with contiguous blocks.
  std::vector<State> elems(n);
  std::vector<std::size_t> loc(n);
  std::vector<std::size_t> blk(n);
  std::vector<std::size_t> first, last, marked;
  {
    std::size_t pos = 0;
    for (int pass = 0; pass < 2; ++pass) {
      std::size_t begin = pos;
      for (State q = 0; q < n; ++q)
        if (d.accepting(q) == (pass == 0)) {
          elems[pos] = q;
          loc[q] = pos++;
        }
      if (pos > begin) {
        for (std::size_t i = begin; i < pos; ++i) blk[elems[i]] = first.size();
        first.push_back(begin);
        last.push_back(pos);
        marked.push_back(0);
      }
    }
  }
  std::vector<char> in_work(first.size(), 0);
  std::vector<std::size_t> work;
  if (first.size() == 2) {
    std::size_t smaller = (last[0] - first[0] <= last[1] - first[1]) ? 0 : 1;
    work.push_back(smaller);
    in_work[smaller] = 1;
  } else {
    work.push_back(0);
    in_work[0] = 1;
  }

  std::vector<State> splitter;
  std::vector<std::size_t> touched;
  while (!work.empty()) {
    std::size_t b = work.back();
    work.pop_back();
    in_work[b] = 0;
    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(first[b]),
                    elems.begin() + static_cast<std::ptrdiff_t>(last[b]));
    for (std::size_t x = 0; x < k; ++x) {
      touched.clear();
      const std::size_t* base = &pred_start[x * (n + 1)];
      for (State q : splitter) {
        for (std::size_t i = base[q]; i < base[q + 1]; ++i) {
          State p = preds[x * n + i];
          std::size_t c = blk[p];
          std::size_t target = first[c] + marked[c];
          if (loc[p] < target) continue;  // already marked
          if (marked[c] == 0) touched.push_back(c);
          State other = elems[target];
          std::swap(elems[target], elems[loc[p]]);
          loc[other] = loc[p];
          loc[p] = target;
          ++marked[c];
        }
      }
      for (std::size_t c : touched) {
        std::size_t m = marked[c];
        marked[c] = 0;
        if (m == last[c] - first[c]) continue;
        std::size_t nb = first.size();
        first.push_back(first[c]);
        last.push_back(first[c] + m);
        marked.push_back(0);
        in_work.push_back(0);
        first[c] += m;
        for (std::size_t i = first[nb]; i < last[nb]; ++i) blk[elems[i]] = nb;
        if (in_work[c]) {
          work.push_back(nb);
          in_work[nb] = 1;
        } else {
          std::size_t pick = (last[nb] - first[nb] <= last[c] - first[c]) ? nb : c;
          work.push_back(pick);
          in_work[pick] = 1;
        }
      }
    }
  }

  const std::size_t blocks = first.size();
  std::vector<bool> acc(blocks);
  std::vector<State> table(blocks * k);
  for (std::size_t b = 0; b < blocks; ++b) {
    State rep = elems[first[b]];
    acc[b] = d.accepting(rep);
    for (std::size_t x = 0; x < k; ++x)
      table[b * k + x] = static_cast<State>(blk[d.next(rep, static_cast<Letter>(x))]);
  }
  return canonical(Dfa(d.alphabet(), blocks, static_cast<State>(blk[d.start()]), std::move(acc), std::move(table)));
}

namespace {

enum class BoolOp { unite, intersect, subtract };

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "boolean operation");
  const std::size_t k = a.letter_count();
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  std::vector<State> table;
  auto intern = [&](State p, State q) {
    std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto [it, inserted] = ids.emplace(key, static_cast<State>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };
  intern(a.start(), b.start());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t x = 0; x < k; ++x) {
      auto [p, q] = pairs[i];
      table.push_back(intern(a.next(p, static_cast<Letter>(x)), b.next(q, static_cast<Letter>(x))));
    }
  std::vector<bool> acc(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool x = a.accepting(pairs[i].first), y = b.accepting(pairs[i].second);
    acc[i] = op == BoolOp::unite ? (x || y) : op == BoolOp::intersect ? (x && y) : (x && !y);
  }
  return minimize(Dfa(a.alphabet(), pairs.size(), 0, std::move(acc), std::move(table)));
}

}  // namespace

Dfa complement(const Dfa& d) {
  std::vector<bool> acc = d.accepting_flags();
  acc.flip();
  return canonical(Dfa(d.alphabet(), d.state_count(), d.start(), std::move(acc), d.table()));
}

Dfa union_of(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::unite); }
Dfa intersection(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::intersect); }
Dfa difference(const Dfa& a, const Dfa& b) { return product(a, b, BoolOp::subtract); }

std::optional<Word> shortest_accepted(const Dfa& d) {
  const std::size_t k = d.letter_count();
  std::vector<State> parent(d.state_count(), kNone);
  std::vector<Letter> via(d.state_count(), 0);
  std::vector<char> seen(d.state_count(), 0);
  std::deque<State> queue{d.start()};
  seen[d.start()] = 1;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (d.accepting(q)) {
      Word w;
      for (State s = q; s != d.start(); s = parent[s]) w.push_back(via[s]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t x = 0; x < k; ++x) {
      State t = d.next(q, static_cast<Letter>(x));
      if (!seen[t]) {
        seen[t] = 1;
        parent[t] = q;
        via[t] = static_cast<Letter>(x);
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

bool is_empty(const Dfa& d) { return !shortest_accepted(d).has_value(); }

std::optional<Word> find_difference(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "equivalence");
  const std::size_t k = a.letter_count();
  std::unordered_map<std::uint64_t, std::size_t> seen;
  struct Node {
    State p, q;
    std::size_t parent;
    Letter via;
  };
  std::vector<Node> nodes;
  auto key = [](State p, State q) { return (static_cast<std::uint64_t>(p) << 32) | q; };
  nodes.push_back({a.start(), b.start(), 0, 0});
  seen.emplace(key(a.start(), b.start()), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [p, q, par, via] = nodes[i];
    if (a.accepting(p) != b.accepting(q)) {
      Word w;
      for (std::size_t j = i; j != 0; j = nodes[j].parent) w.push_back(nodes[j].via);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t x = 0; x < k; ++x) {
      State np = a.next(p, static_cast<Letter>(x)), nq = b.next(q, static_cast<Letter>(x));
      if (seen.emplace(key(np, nq), nodes.size()).second)
        nodes.push_back({np, nq, i, static_cast<Letter>(x)});
    }
  }
  return std::nullopt;
}

std::vector<bool> dead_states(const Dfa& d) {
  const std::size_t n = d.state_count(), k = d.letter_count();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q)
    for (std::size_t x = 0; x < k; ++x) rev[d.next(q, static_cast<Letter>(x))].push_back(q);
  std::vector<bool> live(n, false);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (d.accepting(q)) {
      live[q] = true;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q])
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
  }
  live.flip();
  return live;
}

std::size_t live_state_count(const Dfa& d) {
  auto dead = dead_states(d);
  return static_cast<std::size_t>(std::count(dead.begin(), dead.end(), false));
}

std::vector<std::size_t> bfs_depths(const Dfa& d) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> depth(d.state_count(), inf);
  std::deque<State> queue{d.start()};
  depth[d.start()] = 0;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < d.letter_count(); ++x) {
      State t = d.next(q, static_cast<Letter>(x));
      if (depth[t] == inf) {
        depth[t] = depth[q] + 1;
        queue.push_back(t);
      }
    }
  }
  return depth;
}

namespace {

// reach[j][q]: some word of length exactly j leads from q to acceptance.
std::vector<std::vector<char>> exact_reach(const Dfa& d, std::size_t max_len) {
  std::vector<std::vector<char>> reach(max_len + 1, std::vector<char>(d.state_count(), 0));
  for (State q = 0; q < d.state_count(); ++q) reach[0][q] = d.accepting(q);
  for (std::size_t j = 1; j <= max_len; ++j)
    for (State q = 0; q < d.state_count(); ++q)
      for (std::size_t x = 0; x < d.letter_count() && !reach[j][q]; ++x)
        if (reach[j - 1][d.next(q, static_cast<Letter>(x))]) reach[j][q] = 1;
  return reach;
}

}  // namespace

void for_each_accepted(const Dfa& d, std::size_t max_len, const std::function<void(const Word&)>& visit) {
  auto reach = exact_reach(d, max_len);
  Word w;
  std::vector<State> states;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (!reach[len][d.start()]) continue;
    // Iterative DFS in lexicographic order over words of exactly `len` letters.
    w.assign(len, 0);
    states.assign(len + 1, d.start());
    std::size_t depth = 0;
    std::vector<int> letter(len + 1, -1);
    while (true) {
      if (depth == len) {
        visit(w);
        if (depth == 0) break;
        --depth;
        continue;
      }
      int& x = letter[depth];
      bool advanced = false;
      while (++x < static_cast<int>(d.letter_count())) {
        State t = d.next(states[depth], static_cast<Letter>(x));
        if (reach[len - depth - 1][t]) {
          w[depth] = static_cast<Letter>(x);
          states[depth + 1] = t;
          letter[depth + 1] = -1;
          ++depth;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        x = -1;
        if (depth == 0) break;
        --depth;
      }
    }
  }
}

std::vector<Word> enumerate(const Dfa& d, std::size_t max_len) {
  std::vector<Word> out;
  for_each_accepted(d, max_len, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<std::uint64_t> count_by_length(const Dfa& d, std::size_t max_len) {
  std::vector<std::uint64_t> cur(d.state_count(), 0), nxt;
  for (State q = 0; q < d.state_count(); ++q) cur[q] = d.accepting(q) ? 1 : 0;
  // cur[q] = accepted words of length j from q
  std::vector<std::uint64_t> out;
  out.push_back(cur[d.start()]);
  for (std::size_t j = 1; j <= max_len; ++j) {
    nxt.assign(d.state_count(), 0);
    for (State q = 0; q < d.state_count(); ++q)
      for (std::size_t x = 0; x < d.letter_count(); ++x) nxt[q] += cur[d.next(q, static_cast<Letter>(x))];
    cur.swap(nxt);
    out.push_back(cur[d.start()]);
  }
  return out;
}

std::optional<Word> prefix_closure_violation(const Dfa& d) {
  // Shortlex-least rejected p with some accepted px.
  std::vector<bool> acc(d.state_count());
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.accepting(q)) continue;
    for (Letter x = 0; x < d.letter_count(); ++x)
      if (d.accepting(d.next(q, x))) acc[q] = true;
  }
  return shortest_accepted(Dfa(d.alphabet(), d.state_count(), d.start(), std::move(acc), d.table()));
}

Dfa inverse_image(const Dfa& d, const Alphabet& domain, const std::vector<Letter>& phi) {
  if (phi.size() != domain.size()) throw InputError("inverse_image: morphism is not total on the domain");
  for (Letter y : phi)
    if (y >= d.letter_count()) throw InputError("inverse_image: morphism leaves the target alphabet");
  const std::size_t k = domain.size();
  std::vector<State> table(d.state_count() * k);
  for (State q = 0; q < d.state_count(); ++q)
    for (std::size_t x = 0; x < k; ++x) table[q * k + x] = d.next(q, phi[x]);
  return canonical(Dfa(domain, d.state_count(), d.start(), d.accepting_flags(), std::move(table)));
}

}  // namespace geo
