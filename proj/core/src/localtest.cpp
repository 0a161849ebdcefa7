#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "geo/localtest.hpp"

namespace geo {

namespace {

using Element = TransitionSemigroup::Element;
constexpr Element kOne = TransitionSemigroup::kOne;

Word decode(std::uint64_t code, std::size_t len, std::size_t letters) {
  Word w(len);
  for (std::size_t i = len; i-- > 0;) {
    w[i] = static_cast<Letter>(code % letters);
    code /= letters;
  }
  return w;
}

bool is_constant(const TransitionSemigroup& s, Element e) {
  const std::uint16_t* f = s.transformation(e);
  for (std::size_t q = 1; q < s.degree(); ++q)
    if (f[q] != f[0]) return false;
  return true;
}

Word rep1(const TransitionSemigroup& s, Element e) { return e == kOne ? Word{} : s.representative(e); }

}  // namespace

LtVerdict is_k_testable_semigroup(const Dfa& d, std::size_t k, const SemigroupBudget& budget) {
  try {
    TransitionSemigroup s(d, budget.max_elements);
    return is_k_testable_semigroup(s, k, budget);
  } catch (const ResourceError& e) {
    LtVerdict v;
    v.detail = e.what();
    return v;
  }
}

LtVerdict is_k_testable_semigroup(const TransitionSemigroup& s, std::size_t k, const SemigroupBudget& budget) {
  if (k == 0) throw PreconditionError("k must be positive");
  if (!s.complete()) throw PreconditionError("k-testability needs the complete semigroup");
  LtVerdict v;
  const std::size_t n = s.base().letter_count();
  const std::size_t m = k - 1;
  std::uint64_t block = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (block > budget.max_work / n) {
      v.detail = "too many words of length k-1";
      return v;
    }
    block *= n;
  }
  std::uint64_t work = 0;
  bool exhausted = false;

  std::vector<Element> phi_x(block);
  for (std::uint64_t c = 0; c < block; ++c) phi_x[c] = s.of_word(decode(c, m, n));

  // (1) e s e t e = e t e s e for e = phi(x), s, t in S with 1 adjoined.
  if (k == 1) {
    auto c = is_commutative(s);
    if (c.holds == Truth::no) {
      v.holds = Truth::no;
      v.witness = {Word{}, c.witness[0], c.witness[1]};
      v.detail = "condition 1: xyxzx != xzxyx";
      return v;
    }
  } else {
    std::unordered_map<Element, std::uint64_t> distinct;
    for (std::uint64_t c = 0; c < block; ++c) distinct.emplace(phi_x[c], c);
    std::vector<std::pair<Element, std::uint64_t>> order(distinct.begin(), distinct.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Element, Element>> pairs;
    std::vector<Element> from;
    std::unordered_set<std::uint64_t> seen;
    for (auto [e, code] : order) {
      if (is_constant(s, e)) continue;
      pairs.clear();
      from.clear();
      seen.clear();
      for (std::size_t i = 0; i <= s.size(); ++i) {
        Element t = i == 0 ? kOne : static_cast<Element>(i - 1);
        Element b = s.multiply(t, e);
        Element a = s.multiply(e, b);
        if (seen.insert((std::uint64_t{a} << 32) | b).second) {
          pairs.emplace_back(a, b);
          from.push_back(t);
        }
      }
      const std::uint64_t cost = std::uint64_t(pairs.size()) * pairs.size() / 2 + s.size();
      if (work + cost > budget.max_work) {
        exhausted = true;
        break;
      }
      work += cost;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
          if (s.multiply(pairs[i].first, pairs[j].second) != s.multiply(pairs[j].first, pairs[i].second)) {
            v.holds = Truth::no;
            v.witness = {decode(code, m, n), rep1(s, from[i]), rep1(s, from[j])};
            v.detail = "condition 1: xyxzx != xzxyx";
            return v;
          }
    }
  }

  // (2) whenever xy = zx as words: phi(x) phi(y) = phi(x) phi(y) phi(y).
  auto violates = [&](Element ex, Element t) {
    Element a = s.multiply(ex, t);
    return a != s.multiply(a, t);
  };
  // Short y: x has period l(y) and y is its suffix of that length.
  for (std::uint64_t c = 0; c < block && m > 1; ++c) {
    Word x = decode(c, m, n);
    for (std::size_t p = 1; p < m; ++p) {
      bool periodic = true;
      for (std::size_t i = 0; i + p < m && periodic; ++i) periodic = x[i] == x[i + p];
      if (!periodic) continue;
      Word y(x.end() - p, x.end());
      if (violates(phi_x[c], s.of_word(y))) {
        v.holds = Truth::no;
        v.witness = {x, y};
        v.detail = "condition 2: xy = zx but xy != xyy";
        return v;
      }
    }
  }
  // Long y: closure over (phi(y), suf_{k-1}(y)); then x = suf_{k-1}(y).
  struct Node {
    Element t;
    std::uint64_t suffix;
    std::size_t parent;
    Letter via;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::uint64_t> seen;
  auto key = [&](Element t, std::uint64_t c) { return (std::uint64_t(t) + 1) * block + c; };
  if (m == 0) {
    nodes.push_back({kOne, 0, SIZE_MAX, 0});
    seen.insert(key(kOne, 0));
  } else {
    for (std::uint64_t c = 0; c < block; ++c)
      if (seen.insert(key(phi_x[c], c)).second) nodes.push_back({phi_x[c], c, SIZE_MAX, 0});
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (++work > budget.max_work) {
      exhausted = true;
      break;
    }
    const Node cur = nodes[i];
    if (cur.t != kOne && violates(m == 0 ? kOne : phi_x[cur.suffix], cur.t)) {
      Word tail;
      std::size_t j = i;
      for (; nodes[j].parent != SIZE_MAX; j = nodes[j].parent) tail.push_back(nodes[j].via);
      Word y = decode(nodes[j].suffix, m, n);
      y.insert(y.end(), tail.rbegin(), tail.rend());
      v.holds = Truth::no;
      v.witness = {decode(cur.suffix, m, n), y};
      v.detail = "condition 2: xy = zx but xy != xyy";
      return v;
    }
    for (Letter a = 0; a < n; ++a) {
      Element t = s.times_letter(cur.t, a);
      std::uint64_t c = (cur.suffix * n + a) % block;
      if (seen.insert(key(t, c)).second) nodes.push_back({t, c, i, a});
    }
  }
  v.explored = nodes.size();
  if (exhausted) {
    v.detail = "semigroup work budget exhausted";
    return v;
  }
  v.holds = Truth::yes;
  return v;
}

SemigroupVerdict is_locally_testable(const Dfa& d, std::size_t max_elements) {
  TransitionSemigroup s(d, max_elements, true);
  auto v = is_locally_idempotent_commutative(s);
  if (v.holds == Truth::unknown && v.reason.empty()) v.reason = "semigroup element budget exhausted";
  return v;
}

MinKResult min_k(const Dfa& d, std::size_t k_max, LtMethod method, std::size_t max_profiles,
                 const SemigroupBudget& budget) {
  MinKResult r;
  std::optional<TransitionSemigroup> s;
  if (method != LtMethod::classifier) {
    try {
      s.emplace(d, budget.max_elements);
    } catch (const ResourceError&) {
    }
  }
  for (std::size_t k = 1; k <= k_max; ++k) {
    LtVerdict v;
    if (method != LtMethod::classifier) {
      if (s) v = is_k_testable_semigroup(*s, k, budget);
      else v.detail = "semigroup element budget exhausted";
    }
    if (method != LtMethod::semigroup) {
      LtVerdict c = is_k_testable(d, k, max_profiles);
      if (method == LtMethod::classifier || v.holds == Truth::unknown) {
        v = c;
      } else if (c.holds != Truth::unknown && c.holds != v.holds) {
        throw Error("k-testability deciders disagree at k = " + std::to_string(k));
      }
    }
    Truth h = v.holds;
    r.per_k.push_back(std::move(v));
    if (h == Truth::yes) {
      r.k = k;
      return r;
    }
    if (h == Truth::unknown) r.exact = false;
  }
  return r;
}

std::size_t repetition_bound(std::size_t alphabet_size, std::size_t k) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t p = 1;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    if (alphabet_size != 0 && p > kMax / alphabet_size) return kMax;
    p *= alphabet_size;
  }
  if (p == kMax || p + 1 > kMax / (2 * k)) return kMax;
  return 2 * k * (p + 1);
}

Word power(const Word& w, std::size_t j) {
  Word r;
  r.reserve(w.size() * j);
  for (std::size_t i = 0; i < j; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

RepetitionWitness repetition_witness(const Word& w, std::size_t k, std::size_t alphabet_size) {
  if (k == 0) throw PreconditionError("k must be positive");
  for (Letter x : w)
    if (x >= alphabet_size) throw InputError("word letter outside the alphabet");
  RepetitionWitness r;
  r.bound = repetition_bound(alphabet_size, k);
  if (w.size() < r.bound)
    throw PreconditionError("word shorter than " + std::to_string(r.bound) + "; no repeated block guaranteed");
  const std::size_t len = 2 * k;
  std::unordered_map<Word, std::size_t, WordHash> first;
  std::size_t i = 0, j = 0;
  for (std::size_t b = 0; (b + 1) * len <= w.size(); ++b) {
    Word block(w.begin() + b * len, w.begin() + (b + 1) * len);
    auto [it, inserted] = first.emplace(block, b);
    if (!inserted) {
      i = it->second * len;
      j = b * len;
      break;
    }
  }
  if (j == 0) throw Error("repetition_witness: no repeated block found");
  // w = x s t y s t z with x = w[..i], st = w[i..i+2k], y = w[i+2k..j], z = w[j+2k..]
  r.shift = i + k;
  r.rotated.assign(w.begin() + r.shift, w.end());
  r.rotated.insert(r.rotated.end(), w.begin(), w.begin() + r.shift);
  for (std::size_t p = 2; p <= 4; ++p)
    if (!sim_k(r.rotated, power(r.rotated, p), k)) throw Error("repetition_witness: rotation is not ~k-stable");
  return r;
}

}  // namespace geo
