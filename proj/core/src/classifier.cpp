#include <algorithm>
#include <deque>
#include <iterator>
#include <optional>
#include <set>
#include <unordered_map>

#include "geo/localtest.hpp"

namespace geo {

KProfile k_profile(const Word& w, std::size_t k) {
  if (k == 0) throw PreconditionError("k_profile: k must be positive");
  KProfile p;
  p.k = k;
  const std::size_t m = k - 1;
  if (w.size() < m) {
    p.prefix = p.suffix = w;
    return p;
  }
  p.prefix.assign(w.begin(), w.begin() + m);
  p.suffix.assign(w.end() - m, w.end());
  for (std::size_t i = 0; i + k <= w.size(); ++i) p.factors.emplace(w.begin() + i, w.begin() + i + k);
  return p;
}

bool sim_k(const Word& u, const Word& v, std::size_t k) { return k_profile(u, k) == k_profile(v, k); }

std::set<Letter> support(const Word& w) { return {w.begin(), w.end()}; }

std::size_t ProfileClassifier::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (auto v : k) h = (h ^ v) * 0x100000001B3ull + (h >> 23);
  return static_cast<std::size_t>(h);
}

ProfileClassifier::ProfileClassifier(std::size_t letters, std::size_t k, std::size_t max_states)
    : letters_(letters), k_(k), max_states_(max_states) {
  if (k == 0) throw PreconditionError("classifier: k must be positive");
  if (letters == 0) throw InputError("classifier: empty alphabet");
  double universe = 1;
  for (std::size_t i = 0; i < k; ++i) universe *= static_cast<double>(letters);
  if (universe > 65536) throw ResourceError("classifier: too many length-k factors to track");
  for (std::size_t i = 0; i + 1 < k; ++i) block_ *= letters;
  factor_words_ = (static_cast<std::size_t>(universe) + 63) / 64;
  // key: [length tag, prefix code, suffix code, factor bits...]
  Key start(3 + factor_words_, 0);
  intern(std::move(start));
}

std::size_t ProfileClassifier::intern(Key key) {
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  if (keys_.size() >= max_states_)
    throw ResourceError("classifier exceeds " + std::to_string(max_states_) + " profiles");
  std::size_t id = keys_.size();
  ids_.emplace(key, id);
  keys_.push_back(std::move(key));
  next_.resize(next_.size() + letters_, SIZE_MAX);
  return id;
}

void ProfileClassifier::track_factors(const std::vector<std::vector<Word>>& predicates) {
  if (size() != 1) throw PreconditionError("classifier: restrict before exploring");
  predicates_.clear();
  by_length_.assign(k_ + 1, false);
  for (std::size_t i = 0; i < predicates.size(); ++i)
    for (const Word& f : predicates[i]) {
      if (f.empty() || f.size() > k_) throw PreconditionError("classifier: tracked factor length out of range");
      std::uint64_t code = 0;
      for (Letter x : f) code = code * letters_ + x;
      predicates_[(code << 8) | f.size()].push_back(i);
      by_length_[f.size()] = true;
    }
  factor_words_ = (predicates.size() + 63) / 64;
  keys_.clear();
  ids_.clear();
  next_.clear();
  intern(Key(3 + factor_words_, 0));
  tracking_ = true;
}

void ProfileClassifier::restrict_to(std::vector<bool> factor_ok, std::vector<bool> prefix_ok) {
  if (size() != 1) throw PreconditionError("classifier: restrict before exploring");
  factor_ok_ = std::move(factor_ok);
  prefix_ok_ = std::move(prefix_ok);
}

std::size_t ProfileClassifier::next(std::size_t p, Letter x) {
  if (p == kDead) return kDead;
  std::size_t& slot = next_[p * letters_ + x];
  if (slot != SIZE_MAX) return slot;
  Key key = keys_[p];
  const std::uint64_t m = k_ - 1;
  if (tracking_) {
    // factors ending at the new letter
    const std::size_t avail = key[0] < m ? key[0] + 1 : k_;
    const std::uint64_t ext = (key[0] < m ? key[1] : key[2]) * letters_ + x;
    std::uint64_t mod = 1;
    for (std::size_t j = 1; j <= avail; ++j) {
      mod *= letters_;
      if (!by_length_[j]) continue;
      auto it = predicates_.find(((ext % mod) << 8) | j);
      if (it == predicates_.end()) continue;
      for (std::size_t b : it->second) key[3 + b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
  if (key[0] < m) {
    // short word: prefix code is the whole word
    key[1] = key[1] * letters_ + x;
    key[2] = key[1];
    ++key[0];
    if (key[0] == m && !prefix_ok_.empty() && !prefix_ok_[key[1]]) return next_[p * letters_ + x] = kDead;
  } else {
    std::uint64_t factor = key[2] * letters_ + x;
    if (!factor_ok_.empty() && !factor_ok_[factor]) return next_[p * letters_ + x] = kDead;
    if (!tracking_) key[3 + factor / 64] |= std::uint64_t{1} << (factor % 64);
    key[2] = factor % block_;
  }
  std::size_t id = intern(std::move(key));
  next_[p * letters_ + x] = id;
  return id;
}

bool ProfileClassifier::is_short(std::size_t p) const { return keys_[p][0] + 1 < k_; }

std::uint64_t ProfileClassifier::prefix_code(std::size_t p) const { return keys_[p][1]; }

void ProfileClassifier::merge_into(std::size_t p, std::vector<std::uint64_t>& bits) const {
  const Key& a = keys_[p];
  bits.resize(a.size() - 3, 0);
  for (std::size_t i = 3; i < a.size(); ++i) bits[i - 3] |= a[i];
}

bool ProfileClassifier::within(std::size_t p, const std::vector<std::uint64_t>& bits) const {
  const Key& a = keys_[p];
  for (std::size_t i = 3; i < a.size(); ++i)
    if (a[i] & ~bits[i - 3]) return false;
  return true;
}

std::size_t ProfileClassifier::run(const Word& w) {
  std::size_t p = start();
  for (Letter x : w) p = next(p, x);
  return p;
}

Word ProfileClassifier::decode(std::uint64_t code, std::size_t len) const {
  Word w(len);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<Letter>(code % letters_);
    code /= letters_;
  }
  return w;
}

KProfile ProfileClassifier::profile(std::size_t p) const {
  const Key& key = keys_[p];
  KProfile out;
  out.k = k_;
  out.prefix = decode(key[1], key[0]);
  out.suffix = decode(key[2], key[0]);
  for (std::size_t i = 0; i < factor_words_ * 64; ++i)
    if (key[3 + i / 64] >> (i % 64) & 1) out.factors.insert(decode(i, k_));
  return out;
}

std::size_t ProfileClassifier::explore() {
  for (std::size_t p = 0; p < size(); ++p)
    for (std::size_t x = 0; x < letters_; ++x) next(p, static_cast<Letter>(x));
  return size();
}

namespace {

// Shortest w with exactly one of p.w, q.w accepted; p, q distinct states of a minimal DFA.
Word separator(const Dfa& d, State p, State q) {
  const std::size_t n = d.state_count();
  std::vector<std::size_t> parent(n * n, SIZE_MAX);
  std::vector<Letter> via(n * n);
  std::deque<std::size_t> queue{p * n + q};
  parent[p * n + q] = p * n + q;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    State a = static_cast<State>(cur / n), b = static_cast<State>(cur % n);
    if (d.accepting(a) != d.accepting(b)) {
      Word w;
      for (std::size_t c = cur; c != p * n + q; c = parent[c]) w.push_back(via[c]);
      return Word(w.rbegin(), w.rend());
    }
    for (Letter x = 0; x < d.letter_count(); ++x) {
      std::size_t nxt = d.next(a, x) * n + d.next(b, x);
      if (parent[nxt] == SIZE_MAX) {
        parent[nxt] = cur;
        via[nxt] = x;
        queue.push_back(nxt);
      }
    }
  }
  throw Error("separator: states are equivalent");
}

std::optional<State> dead_state(const Dfa& d) {
  for (State q = 0; q < d.state_count(); ++q) {
    bool dead = !d.accepting(q);
    for (Letter x = 0; x < d.letter_count() && dead; ++x) dead = d.next(q, x) == q;
    if (dead) return q;
  }
  return std::nullopt;
}

// Factors and (k-1)-prefixes that occur in some accepted word.
void restrict_to_live(ProfileClassifier& c, const Dfa& d) {
  const std::size_t n = d.state_count(), a = d.letter_count(), k = c.k();
  std::vector<bool> live(n, false);
  for (State q = 0; q < n; ++q) live[q] = d.accepting(q);
  for (bool changed = true; changed;) {
    changed = false;
    for (State q = 0; q < n; ++q)
      for (Letter x = 0; x < a && !live[q]; ++x)
        if (live[d.next(q, x)]) live[q] = changed = true;
  }
  auto walk = [&](State q, std::size_t code, std::size_t len) {
    std::vector<Letter> w(len);
    for (std::size_t i = len; i-- > 0; code /= a) w[i] = static_cast<Letter>(code % a);
    for (Letter x : w) q = d.next(q, x);
    return q;
  };
  std::size_t block = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) block *= a;
  std::vector<bool> factor_ok(block * a, false), prefix_ok(block, false);
  for (std::size_t f = 0; f < factor_ok.size(); ++f)
    for (State q = 0; q < n && !factor_ok[f]; ++q) factor_ok[f] = live[walk(q, f, k)];
  for (std::size_t p = 0; p < block; ++p) prefix_ok[p] = live[walk(d.start(), p, k - 1)];
  c.restrict_to(std::move(factor_ok), std::move(prefix_ok));
}

struct Conflict {
  Word u, v;  // same tracked profile, different states
  State qu, qv;
};

// Walks the classifier (tracking only `tracked` factors) in lockstep with d.
std::optional<Conflict> find_conflict(const Dfa& d, std::size_t k, const std::vector<std::vector<Word>>& tracked,
                                      std::size_t max_profiles, std::size_t& explored) {
  struct Node {
    std::size_t profile;
    State q;
    std::size_t parent;
    Letter via;
  };
  std::vector<Node> nodes;
  auto word_of = [&](std::size_t i) {
    Word w;
    for (; nodes[i].parent != SIZE_MAX; i = nodes[i].parent) w.push_back(nodes[i].via);
    return Word(w.rbegin(), w.rend());
  };
  ProfileClassifier c(d.letter_count(), k, max_profiles);
  restrict_to_live(c, d);
  c.track_factors(tracked);
  std::vector<std::size_t> owner{0};
  nodes.push_back({c.start(), d.start(), SIZE_MAX, 0});
  // Words in the dead state are expanded last, and only while some live
  // word's profile with the same prefix still contains all their factors:
  // factor sets only grow, so nothing else can meet a live profile.
  const std::optional<State> dead = dead_state(d);
  std::vector<std::size_t> live_queue{0}, dead_queue;
  if (dead && d.start() == *dead) std::swap(live_queue, dead_queue);
  // maximal factor sets of live words, by prefix
  std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> live_max;
  auto dominated = [&](std::size_t p) {
    if (c.is_short(p)) return true;
    auto it = live_max.find(c.prefix_code(p));
    if (it == live_max.end()) return false;
    for (const auto& bits : it->second)
      if (c.within(p, bits)) return true;
    return false;
  };
  auto build_live_max = [&] {
    std::unordered_map<std::uint64_t, std::vector<std::vector<std::uint64_t>>> all;
    for (const Node& n : nodes)
      if (n.q != dead && !c.is_short(n.profile)) {
        std::vector<std::uint64_t> bits;
        c.merge_into(n.profile, bits);
        all[c.prefix_code(n.profile)].push_back(std::move(bits));
      }
    auto count = [](const std::vector<std::uint64_t>& b) {
      std::size_t n = 0;
      for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
      return n;
    };
    auto subset = [](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
      return true;
    };
    for (auto& [prefix, sets] : all) {
      std::sort(sets.begin(), sets.end());
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
      std::stable_sort(sets.begin(), sets.end(), [&](const auto& x, const auto& y) { return count(x) > count(y); });
      auto& keep = live_max[prefix];
      for (auto& s : sets)
        if (std::none_of(keep.begin(), keep.end(), [&](const auto& m) { return subset(s, m); }))
          keep.push_back(std::move(s));
    }
  };
  for (int phase = 0; phase < 2; ++phase) {
    auto& queue = phase == 0 ? live_queue : dead_queue;
    if (phase == 1) build_live_max();
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t i = queue[h];
      if (phase == 1 && !dominated(nodes[i].profile)) continue;
      for (Letter x = 0; x < d.letter_count(); ++x) {
        std::size_t p = c.next(nodes[i].profile, x);
        State q = d.next(nodes[i].q, x);
        // a factor or prefix no accepted word has: q is the sink, as for every v ~k u
        if (p == ProfileClassifier::kDead) continue;
        if (owner.size() <= p) owner.resize(p + 1, SIZE_MAX);
        if (owner[p] == SIZE_MAX) {
          owner[p] = nodes.size();
          (q == dead ? dead_queue : live_queue).push_back(nodes.size());
          nodes.push_back({p, q, i, x});
          continue;
        }
        const Node& other = nodes[owner[p]];
        if (other.q == q) continue;
        Conflict out{word_of(owner[p]), word_of(i), other.q, q};
        out.v.push_back(x);
        explored += c.size();
        return out;
      }
    }
  }
  explored += c.size();
  return std::nullopt;
}

// In a minimal DFA, L is a union of ~k classes iff the profile of u
// determines the state reached by u. The walk starts coarse, tracking no
// factors; a conflict between words with different factor sets adds the
// factors that tell them apart. A conflict-free coarse walk is conclusive
// since its classes are unions of ~k classes.
std::set<Word> factors_of_length(const Word& w, std::size_t j) {
  std::set<Word> out;
  for (std::size_t i = 0; i + j <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + j);
  return out;
}

// In a minimal DFA, L is a union of ~k classes iff the profile of u
// determines the state reached by u. The walk starts coarse, recording only
// prefix and suffix, and refines on conflict by the presence of the shortest
// factors that tell the two words apart. Every coarse class is a union of ~k
// classes, so a conflict-free walk is conclusive; a conflict between words
// with equal profiles is a witness.
LtVerdict search(const Dfa& d, std::size_t k, std::size_t max_profiles) {
  LtVerdict v;
  std::vector<std::vector<Word>> tracked;
  std::size_t rounds = 0;
  try {
    while (true) {
      ++rounds;
      auto c = find_conflict(d, k, tracked, max_profiles, v.explored);
      if (!c) break;
      if (k_profile(c->u, k) == k_profile(c->v, k)) {
        Word tail = separator(d, c->qu, c->qv);
        Word u = c->u, w = c->v;
        u.insert(u.end(), tail.begin(), tail.end());
        w.insert(w.end(), tail.begin(), tail.end());
        if (!d.accepts(u)) std::swap(u, w);
        v.holds = Truth::no;
        v.witness = {u, w};
        v.detail = "u ~k v with u accepted and v rejected";
        return v;
      }
      std::size_t added = 0;
      for (std::size_t j = 1; j <= k && added == 0; ++j) {
        const std::set<Word> fu = factors_of_length(c->u, j), fv = factors_of_length(c->v, j);
        // one side's extra factors; any of them marks that side
        std::vector<Word> only_u, only_v;
        std::set_difference(fu.begin(), fu.end(), fv.begin(), fv.end(), std::back_inserter(only_u));
        std::set_difference(fv.begin(), fv.end(), fu.begin(), fu.end(), std::back_inserter(only_v));
        if (only_u.empty() && only_v.empty()) continue;
        auto& pick = only_v.empty() || (!only_u.empty() && only_u.size() <= only_v.size()) ? only_u : only_v;
        tracked.push_back(std::move(pick));
        ++added;
      }
      if (added == 0) throw Error("classifier: refinement made no progress");
    }
    v.holds = Truth::yes;
    v.detail = std::to_string(tracked.size()) + " factor predicates, " + std::to_string(rounds) + " rounds";
  } catch (const ResourceError& e) {
    v.holds = Truth::unknown;
    v.detail = e.what();
  }
  return v;
}

}  // namespace

LtVerdict is_k_testable(const Dfa& input, std::size_t k, std::size_t max_profiles) {
  if (k == 0) throw PreconditionError("k must be positive");
  const Dfa d = minimize(input);
  if (d.state_count() == 1) {
    LtVerdict v;
    v.holds = Truth::yes;
    v.detail = "trivial language";
    return v;
  }
  // ~k refines ~(k-1), so (k-1)-testable implies k-testable.
  if (k > 1) {
    LtVerdict lower = is_k_testable(d, k - 1, max_profiles);
    if (lower.holds == Truth::yes) {
      lower.detail = "testable at k = " + std::to_string(k - 1);
      return lower;
    }
  }
  return search(d, k, max_profiles);
}

}  // namespace geo
